#include "dga/theorems.hpp"

#include <algorithm>
#include <cmath>

namespace dga {

std::string route_text(Route r) {
  switch (r) {
    case Route::Corollary: return "COROLLARY";
    case Route::Oracle: return "ORACLE";
    default: return "LES-BOUND";
  }
}

namespace {

Index h_dim(const DGAlgebra& S, int n) { return homology_dim(S, n); }

bool connective(const DGAlgebra& S) {
  DegreeWindow s = S.basis().support();
  DegreeWindow w{std::min(s.lo, -1), std::max(s.hi, 0)};
  if (S.truncated()) w.lo = std::max(w.lo, S.complete().lo);
  try {
    return is_connective(S, w);
  } catch (const WindowError&) {
    return false;
  }
}

DGBimodule coefficient(const AlgebraMap& phi) {
  return restrict_bimodule(phi, regular_bimodule(phi.target), true);
}

struct Edge {
  Index hh = 0;
  Index h = 0;
  Index rank = 0;
  Status status = Status::Unstable;
  int cutoff = 0;
  Index ker() const { return hh - rank; }
  Index coker() const { return h - rank; }
};

Edge edge(const DGBimodule& M, int n, const CohomologyOptions& opt) {
  EdgeMap e = edge_map(M, n, opt);
  return Edge{e.source.dim, e.target_dim, static_cast<Index>(rank(M.field(), e.matrix)), e.source.status,
              e.source.cutoff};
}

}  // namespace

PiGroup free_source_oracle(const FreeSource& V, const DGAlgebra& S, int n) {
  PiGroup g;
  g.n = n;
  g.route = Route::Oracle;
  g.status = Status::Exact;
  g.determined = true;
  for (int j : V.generator_degrees) g.value += h_dim(S, j - n);
  return g;
}

LESReport fiber_les_assemble(const AlgebraMap& phi, int i_max, const CohomologyOptions& opt,
                             const std::optional<FreeSource>& free) {
  const DGAlgebra& S = *phi.target;
  if (!is_strict(S)) throw ScopeError("target algebra is not strict");
  if (i_max < 1) throw ScopeError("the sequence needs i_max >= 1");
  const DGBimodule M = coefficient(phi);
  const bool corollary = connective(S);

  std::map<int, Edge> edges;  // keyed by i, edge HH^{−i} → H^{−i}
  for (int i = 1; i <= i_max + 1; ++i) edges[i] = edge(M, -i, opt);

  // [R,S]_{i+1}: independent value when available, and the value forced by exactness.
  struct Pi {
    std::optional<Index> independent;
    std::string source;
    Index forced = 0;
    bool certified = false;
  };
  std::map<int, Pi> pis;
  for (int i = 1; i <= i_max; ++i) {
    Pi p;
    p.forced = edges[i + 1].coker() + edges[i].ker();
    p.certified = edges[i].status != Status::Unstable && edges[i + 1].status != Status::Unstable;
    if (free) {
      p.independent = free_source_oracle(*free, S, i + 1).value;
      p.source = "oracle";
    } else if (corollary && edges[i].status != Status::Unstable) {
      p.independent = edges[i].hh;
      p.source = "corollary";
    } else {
      p.source = "les-derived";
    }
    pis[i] = p;
  }
  auto consistent = [&](int i) {
    auto it = pis.find(i);
    return it != pis.end() && it->second.independent && it->second.certified &&
           *it->second.independent == it->second.forced;
  };

  LESReport report;
  for (int i = i_max; i >= 1; --i) {
    const Pi& p = pis[i];
    LESNode pi{"[R,S]_" + std::to_string(i + 1), -i, p.independent.value_or(p.forced),
               p.certified ? weakest(edges[i].status, edges[i + 1].status) : Status::Unstable,
               edges[i].cutoff, p.source};
    if (p.independent && p.certified)
      pi.verdict = *p.independent == p.forced ? Verdict::Exact : Verdict::NotExact;
    report.nodes.push_back(pi);
    report.outgoing_rank.push_back(std::nullopt);

    LESNode hh{"HH", -i, edges[i].hh, edges[i].status, edges[i].cutoff};
    if (edges[i].status != Status::Unstable && p.independent && p.certified)
      hh.verdict = consistent(i) ? Verdict::Exact : Verdict::NotExact;
    report.nodes.push_back(hh);
    report.outgoing_rank.push_back(edges[i].rank);

    LESNode h{"H", -i, edges[i].h, Status::Exact, 0};
    if (i >= 2 && edges[i].status != Status::Unstable && pis[i - 1].independent && pis[i - 1].certified)
      h.verdict = consistent(i - 1) ? Verdict::Exact : Verdict::NotExact;
    report.nodes.push_back(h);
    report.outgoing_rank.push_back(std::nullopt);
  }
  return report;
}

LESReport theorem_b_les_report(const AlgebraMap& phi, int i_max, const CohomologyOptions& opt,
                               const std::optional<FreeSource>& free) {
  return fiber_les_assemble(phi, i_max, opt, free);
}

PiGroup pi_map_alg(const AlgebraMap& phi, int n, const CohomologyOptions& opt,
                   const std::optional<FreeSource>& free) {
  if (n < 2) throw ScopeError("pi_map_alg covers n >= 2");
  const DGAlgebra& S = *phi.target;
  if (!is_strict(S)) throw ScopeError("target algebra is not strict");
  PiGroup g;
  g.n = n;
  if (connective(S)) {
    CohomologyGroup hh = hh_group(coefficient(phi), -(n - 1), opt);
    g.route = Route::Corollary;
    g.value = hh.dim;
    g.status = hh.status;
    g.determined = hh.status != Status::Unstable;
    if (!g.determined) g.note = "HH^" + std::to_string(-(n - 1)) + " is " + status_text(hh.status, hh.cutoff);
    return g;
  }
  if (free) return free_source_oracle(*free, S, n);
  LESReport les = fiber_les_assemble(phi, n - 1, opt);
  const LESNode& node = les.nodes.front();
  g.route = Route::LesBound;
  g.status = node.status;
  g.determined = node.status != Status::Unstable;
  if (g.determined) {
    g.value = node.dim;
    g.bounds = std::make_pair(node.dim, node.dim);
  } else {
    g.note = "neighbouring Hochschild groups are not stabilized";
  }
  return g;
}

namespace {

Index power(Index base, Index e) {
  Index r = 1;
  for (Index i = 0; i < e; ++i) r *= base;
  return r;
}

/// Units of H^0(R) by enumeration: x is a unit iff left multiplication by x is bijective.
Index h0_unit_count(const DGAlgebra& R) {
  const Field& F = R.field();
  ChainComplex C = R.complex();
  HomologyGroup H = homology_at(C, 0);
  const Index dim = H.dim();
  const Index p = static_cast<Index>(F.characteristic());
  if (static_cast<double>(dim) * std::log2(static_cast<double>(p)) > 20)
    throw ScopeError("H^0(R) is too large to enumerate its units");
  std::vector<SparseVec> reps;
  for (const auto& r : H.representatives()) reps.push_back(R.to_global(r, 0));
  auto mult = [&](const SparseVec& a, const SparseVec& b) {
    return H.coordinates(R.to_local(R.multiply(a, b), 0));
  };
  Index count = 0;
  const Index total = power(p, dim);
  for (Index code = 0; code < total; ++code) {
    SparseVec x;
    Index c = code;
    for (Index i = 0; i < dim; ++i, c /= p)
      if (c % p) x = axpy(F, x, F.from_int(static_cast<long>(c % p)), reps[i]);
    Matrix L(dim, dim);
    for (Index j = 0; j < dim; ++j) L.columns[j] = mult(x, reps[j]);
    if (is_invertible(F, L)) ++count;
  }
  return count;
}

}  // namespace

TheoremAReport theorem_a_report(std::shared_ptr<const DGAlgebra> R, const CohomologyOptions& opt) {
  const Field& F = R->field();
  if (!F.is_prime_field()) throw ScopeError("unit groups are enumerated over F_p only");
  if (!is_strict(*R)) throw ScopeError("algebra is not strict");
  TheoremAReport rep;
  HH0Ring ring = hh0_ring(regular_bimodule(R), opt);
  std::vector<SparseVec> units = hh0_units(ring);
  rep.hh0_units = units.size();
  rep.h0_units = h0_unit_count(*R);
  rep.h_minus1_dim = h_dim(*R, -1);
  for (const auto& u : units)
    if (apply(F, ring.edge, u) == ring.h0_unit) rep.kernel.push_back(u);
  rep.kernel_is_subgroup = std::find(rep.kernel.begin(), rep.kernel.end(), ring.unit) != rep.kernel.end();
  for (const auto& a : rep.kernel)
    for (const auto& b : rep.kernel)
      if (std::find(rep.kernel.begin(), rep.kernel.end(), ring.multiply(a, b)) == rep.kernel.end())
        rep.kernel_is_subgroup = false;

  const Index p = static_cast<Index>(F.characteristic());
  const Index k = rep.kernel.size();
  PiGroup& pi = rep.pi1;
  pi.n = 1;
  pi.status = ring.group.status;
  if (rep.h_minus1_dim == 0) {
    pi.route = Route::Corollary;
    pi.value = k;
    pi.determined = ring.group.status != Status::Unstable;
  } else {
    pi.route = Route::LesBound;
    pi.bounds = std::make_pair(k, k * power(p, rep.h_minus1_dim));
    pi.note = "extension of the kernel by a quotient of H^-1(R)";
  }

  LESNode h1{"H", -1, rep.h_minus1_dim, Status::Exact, 0};
  LESNode r1{"[R,R]_1", 1, pi.determined ? pi.value : 0, pi.status, ring.group.cutoff,
             pi.determined ? "corollary" : "les-derived"};
  LESNode hh{"HH^0 units", 0, rep.hh0_units, ring.group.status, ring.group.cutoff};
  LESNode h0{"H^0 units", 0, rep.h0_units, Status::Exact, 0};
  // Exactness at the units of HH^0 as pointed sets: the image of [R,R]_1 is the preimage of 1.
  if (pi.determined) hh.verdict = rep.kernel_is_subgroup ? Verdict::Exact : Verdict::NotExact;
  rep.les.nodes = {h1, r1, hh, h0};
  rep.les.outgoing_rank = {std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  return rep;
}

LemmaCReport lemma_c_check(const DGBimodule& M, int n, const CohomologyOptions& opt) {
  if (n < 2) throw ScopeError("the square-zero decomposition needs n > 1");
  auto R = M.left_ptr();
  if (&M.left_algebra() != &M.right_algebra()) throw ScopeError("M must be an (R, R)-bimodule");
  if (!connective(*R)) throw ScopeError("R is not connective");
  auto E = std::make_shared<const DGAlgebra>(square_zero_extension(*R, M));
  if (!connective(*E)) throw ScopeError("square-zero extension is not connective");
  if (!is_strict(*E)) throw ScopeError("square-zero extension is not strict");

  Matrix inclusion(E->dim(), R->dim());
  for (Index i = 0; i < R->dim(); ++i) inclusion.columns[i] = unit_vector(i);
  AlgebraMap phi{R, E, inclusion};
  const DGBimodule regular = regular_bimodule(R);

  CohomologyGroup a = hh_group(coefficient(phi), -n + 1, opt);
  CohomologyGroup hr = hh_group(regular, -n + 1, opt);
  CohomologyGroup hm = hh_group(M, -n + 1, opt);
  CohomologyGroup der = der_group(M, -n, opt);

  LemmaCReport rep;
  rep.n = n;
  rep.a = a.dim;
  rep.b = hr.dim + hm.dim;
  rep.c = der.dim + hr.dim;
  rep.equal = rep.a == rep.b && rep.b == rep.c;
  rep.status = weakest(weakest(a.status, hr.status), weakest(hm.status, der.status));
  return rep;
}

DerHHReport der_hh_relation(const DGBimodule& M, int n, const CohomologyOptions& opt) {
  DerHHReport rep;
  rep.n = n;
  LESReport les = der_hh_les(M, DegreeWindow{-n + 1, -n + 1}, opt);
  // Nodes: Der^{−n}, HH^{−n+1}, H^{−n+1}(M), Der^{−n+1}.
  rep.der = les.nodes[0].dim;
  rep.hh = les.nodes[1].dim;
  rep.h_right = les.nodes[2].dim;
  rep.h_left = homology_at(M.complex(), -n).dim();
  rep.status = weakest(les.nodes[0].status, les.nodes[1].status);
  rep.les_exact = les.count(Verdict::NotExact) == 0 && les.nodes[1].verdict == Verdict::Exact;
  // H^{−n}(M) → Der^{−n} → HH^{−n+1} → H^{−n+1}(M): with both ends zero the middle map is bijective.
  rep.equal = rep.der == rep.hh;
  return rep;
}

bool is_graded_commutative(const DGAlgebra& S) {
  const Field& F = S.field();
  for (Index a = 0; a < S.dim(); ++a)
    for (Index b = a; b < S.dim(); ++b) {
      const auto& ab = S.table().at(a, b);
      const auto& ba = S.table().at(b, a);
      if (!ab || !ba) throw HorizonExceeded("commutativity needs the full structure table");
      if (*ab != scaled(F, *ba, F.sign(static_cast<long>(S.degree(a)) * S.degree(b)))) return false;
    }
  return true;
}

namespace {

Matrix differential_or_zero(const ChainComplex& C, int n) {
  if (C.has_differential(n)) return C.d(n);
  return Matrix(C.dim(n + 1), C.dim(n));
}

/// Degree-e cocycles of S modulo endpoints of homotopies s(t) + s'(t)dt with s(0) = 0
/// and polynomial degree <= D: returns (dim Z^e, dim of the endpoint span).
std::pair<Index, Index> homotopy_classes(const DGAlgebra& S, int e, int D) {
  const Field& F = S.field();
  ChainComplex C = S.complex();
  const Index a = C.dim(e), b = C.dim(e - 1), c = C.dim(e + 1);
  const Matrix de = differential_or_zero(C, e), de1 = differential_or_zero(C, e - 1);
  const Index z = a - rank(F, de);
  // Unknowns: s_k for k = 1..D, then s'_k for k = 0..D.
  // Rows: t^k part d s_k (k = 1..D), then t^k dt part (−1)^e (k+1) s_{k+1} + d s'_k (k = 0..D).
  const Index cols = D * a + (D + 1) * b;
  const Index rows = D * c + (D + 1) * a;
  Matrix K(rows, cols);
  const Scalar sign = F.sign(e);
  for (int k = 1; k <= D; ++k)
    for (Index i = 0; i < a; ++i) {
      SparseVec col;
      for (const auto& [r, v] : de.columns[i]) col.emplace_back((k - 1) * c + r, v);
      col.emplace_back(D * c + (k - 1) * a + i, F.mul(sign, F.from_int(k)));
      K.columns[(k - 1) * a + i] = collect(F, col);
    }
  for (int k = 0; k <= D; ++k)
    for (Index j = 0; j < b; ++j) {
      SparseVec col;
      for (const auto& [r, v] : de1.columns[j]) col.emplace_back(D * c + k * a + r, v);
      K.columns[D * a + k * b + j] = collect(F, col);
    }
  Echelon endpoints(F);
  for (const auto& sol : kernel(F, K)) {
    SparseVec end;
    for (const auto& [idx, v] : sol)
      if (idx < static_cast<Index>(D) * a) end = axpy(F, end, v, unit_vector(idx % a));
    endpoints.insert(end);
  }
  return {z, endpoints.rank()};
}

Index pi0_dim(const DGAlgebra& S, const std::vector<int>& generators, int D) {
  Index total = 0;
  for (int e : generators) {
    auto [z, b] = homotopy_classes(S, e, D);
    total += z - b;
  }
  return total;
}

}  // namespace

SemifreePi0 semifree_pi0(const DGAlgebra& S, const SemifreeOptions& opt) {
  if (S.field().is_prime_field()) throw ScopeError("polynomial path objects need characteristic 0");
  if (S.truncated()) throw ScopeError("target must be finite dimensional");
  if (!is_strict(S)) throw ScopeError("target algebra is not strict");
  if (!is_graded_commutative(S)) throw ScopeError("target algebra is not graded commutative");
  // In the graded-commutative S[t, dt] the commutator of the images of x and y vanishes, so
  // dz = xy − yx imposes d f(z) = 0 and every generator contributes independently.
  std::vector<int> assoc{0, 0};
  if (opt.with_relation) assoc.push_back(-1);
  SemifreePi0 rep;
  rep.associative_by_cap = {pi0_dim(S, assoc, opt.degree_cap), pi0_dim(S, assoc, opt.degree_cap + 1)};
  rep.associative = rep.associative_by_cap.first;
  rep.commutative = pi0_dim(S, {0, 0}, opt.degree_cap);
  const bool stable = rep.associative_by_cap.first == rep.associative_by_cap.second &&
                      rep.commutative == pi0_dim(S, {0, 0}, opt.degree_cap + 1);
  rep.status = stable ? Status::Stabilized : Status::Unstable;
  rep.h0 = h_dim(S, 0);
  rep.h_minus1 = h_dim(S, -1);
  return rep;
}

}  // namespace dga
