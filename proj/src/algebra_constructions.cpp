#include <algorithm>
#include <map>

#include "dga/algebra.hpp"

namespace dga {

namespace {

SparseVec shifted(const SparseVec& v, Index off) {
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i + off, x);
  return out;
}

std::optional<SparseVec> shifted(const std::optional<SparseVec>& v, Index off) {
  if (!v) return std::nullopt;
  return shifted(*v, off);
}

void require_complete(const DGAlgebra& A, const char* what) {
  if (A.truncated()) throw ScopeError(std::string(what) + " needs a finite algebra");
}

std::string label_of(const GradedBasis& B, Index i) {
  return B.labels.empty() ? "e" + std::to_string(i) : B.labels[i];
}

}  // namespace

DGAlgebra ground_algebra(Field F) {
  GradedBasis B{{0}, {"1"}};
  StructureTable t(1, 1);
  t.at(0, 0) = unit_vector(0);
  return DGAlgebra(F, B, {SparseVec{}}, t);
}

DGAlgebra dual_numbers(Field F, int eps_degree) {
  GradedBasis B{{0, eps_degree}, {"1", "e"}};
  StructureTable t(2, 2);
  t.at(0, 0) = unit_vector(0);
  t.at(0, 1) = unit_vector(1);
  t.at(1, 0) = unit_vector(1);
  return DGAlgebra(F, B, {SparseVec{}, SparseVec{}}, t);
}

DGAlgebra matrix_algebra(Field F, int n) {
  if (n < 1) throw ValidationError("matrix size must be positive");
  // Basis: identity, then E_ij for (i,j) != (0,0). Each basis element as an n×n matrix.
  const Index N = static_cast<Index>(n) * n;
  std::vector<std::vector<Scalar>> as_matrix;
  GradedBasis B;
  std::vector<Scalar> id(N, Scalar(0));
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  as_matrix.push_back(id);
  B.degree.push_back(0);
  B.labels.push_back("1");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == 0 && j == 0) continue;
      std::vector<Scalar> e(N, Scalar(0));
      e[i * n + j] = 1;
      as_matrix.push_back(e);
      B.degree.push_back(0);
      B.labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  // Coordinates: E_ij (≠E_00) read off directly; identity coefficient = entry (0,0).
  auto coords = [&](const std::vector<Scalar>& m) {
    std::vector<std::pair<Index, Scalar>> terms;
    Scalar c0 = m[0];
    terms.emplace_back(0, c0);
    Index k = 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == 0 && j == 0) continue;
        Scalar v = m[i * n + j];
        if (i == j) v -= c0;
        terms.emplace_back(k++, v);
      }
    return collect(F, terms);
  };
  StructureTable t(N, N);
  for (Index a = 0; a < N; ++a)
    for (Index b = 0; b < N; ++b) {
      std::vector<Scalar> prod(N, Scalar(0));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) prod[i * n + j] += as_matrix[a][i * n + k] * as_matrix[b][k * n + j];
      t.at(a, b) = coords(prod);
    }
  return DGAlgebra(F, B, std::vector<SparseVec>(N), t);
}

DGAlgebra free_algebra(Field F, const std::vector<int>& gens, int horizon) {
  if (horizon < 0) throw ValidationError("horizon must be non-negative");
  std::vector<std::vector<int>> words{{}};
  std::map<std::vector<int>, Index> index{{{}, 0}};
  std::vector<std::vector<int>> frontier{{}};
  for (int len = 1; len <= horizon && !gens.empty(); ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
        auto v = w;
        v.push_back(g);
        index.emplace(v, words.size());
        words.push_back(v);
        next.push_back(std::move(v));
      }
    frontier = std::move(next);
  }
  const Index n = words.size();
  GradedBasis B;
  std::vector<int> weight;
  for (const auto& w : words) {
    int deg = 0;
    std::string label;
    for (int g : w) {
      deg += gens[g];
      label += gens.size() == 1 ? "x" : "x" + std::to_string(g + 1);
    }
    B.degree.push_back(deg);
    B.labels.push_back(w.empty() ? "1" : label);
    weight.push_back(static_cast<int>(w.size()));
  }
  StructureTable t(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (words[a].size() + words[b].size() > static_cast<std::size_t>(horizon)) {
        t.at(a, b) = std::nullopt;
        continue;
      }
      auto w = words[a];
      w.insert(w.end(), words[b].begin(), words[b].end());
      t.at(a, b) = unit_vector(index.at(w));
    }
  if (gens.empty()) return DGAlgebra(F, B, std::vector<SparseVec>(n), t, weight);
  int gmin = *std::min_element(gens.begin(), gens.end());
  int gmax = *std::max_element(gens.begin(), gens.end());
  DegreeWindow complete{0, -1};
  // Words of length horizon+1 are the first missing ones.
  if (gmin > 0) complete = {-kUnboundedDegree, (horizon + 1) * gmin - 1};
  else if (gmax < 0) complete = {(horizon + 1) * gmax + 1, kUnboundedDegree};
  return DGAlgebra(F, B, std::vector<SparseVec>(n), t, weight, complete);
}

DGAlgebra tensor_algebras(const DGAlgebra& A, const DGAlgebra& Bv) {
  require_complete(A, "tensor product");
  require_complete(Bv, "tensor product");
  const Field& F = A.field();
  const Index na = A.dim(), nb = Bv.dim(), n = na * nb;
  GradedBasis B;
  for (Index a = 0; a < na; ++a)
    for (Index b = 0; b < nb; ++b) {
      B.degree.push_back(A.degree(a) + Bv.degree(b));
      B.labels.push_back(label_of(A.basis(), a) + "⊗" + label_of(Bv.basis(), b));
    }
  auto outer = [&](const SparseVec& x, const SparseVec& y) {
    std::vector<std::pair<Index, Scalar>> terms;
    for (const auto& [i, u] : x)
      for (const auto& [j, v] : y) terms.emplace_back(i * nb + j, F.mul(u, v));
    return collect(F, terms);
  };
  std::vector<SparseVec> d(n);
  for (Index a = 0; a < na; ++a)
    for (Index b = 0; b < nb; ++b)
      d[a * nb + b] = axpy(F, outer(A.d(a), unit_vector(b)), F.sign(A.degree(a)),
                           outer(unit_vector(a), Bv.d(b)));
  StructureTable t(n, n);
  for (Index a = 0; a < na; ++a)
    for (Index b = 0; b < nb; ++b)
      for (Index a2 = 0; a2 < na; ++a2)
        for (Index b2 = 0; b2 < nb; ++b2)
          t.at(a * nb + b, a2 * nb + b2) =
              scaled(F, outer(A.product(a, a2), Bv.product(b, b2)),
                     F.sign(Bv.degree(b) * A.degree(a2)));
  return DGAlgebra(F, B, d, t);
}

DGAlgebra opposite(const DGAlgebra& A) {
  require_complete(A, "opposite algebra");
  const Field& F = A.field();
  StructureTable t(A.dim(), A.dim());
  for (Index a = 0; a < A.dim(); ++a)
    for (Index b = 0; b < A.dim(); ++b)
      t.at(a, b) = scaled(F, A.product(b, a), F.sign(A.degree(a) * A.degree(b)));
  std::vector<SparseVec> d(A.dim());
  for (Index i = 0; i < A.dim(); ++i) d[i] = A.d(i);
  return DGAlgebra(F, A.basis(), d, t);
}

DGAlgebra enveloping(const DGAlgebra& A) { return tensor_algebras(A, opposite(A)); }

DGAlgebra change_basis(const DGAlgebra& A, const Matrix& P) {
  require_complete(A, "change of basis");
  const Field& F = A.field();
  const Index n = A.dim();
  if (P.rows != n || P.cols != n || !is_invertible(F, P))
    throw ValidationError("change of basis needs an invertible square matrix");
  if (P.columns[0] != unit_vector(0)) throw ValidationError("change of basis must fix the unit");
  GradedBasis B;
  for (Index j = 0; j < n; ++j) {
    const SparseVec& c = P.columns[j];
    int deg = A.degree(c.front().first);
    for (const auto& e : c)
      if (A.degree(e.first) != deg) throw ValidationError("change of basis must preserve degrees");
    B.degree.push_back(deg);
    B.labels.push_back("b" + std::to_string(j));
  }
  B.labels[0] = "1";
  auto coords = [&](const SparseVec& v) {
    auto s = solve(F, P, v);
    return *s;
  };
  std::vector<SparseVec> d(n);
  StructureTable t(n, n);
  for (Index i = 0; i < n; ++i) {
    d[i] = coords(A.apply_d(P.columns[i]));
    for (Index j = 0; j < n; ++j) t.at(i, j) = coords(A.multiply(P.columns[i], P.columns[j]));
  }
  return DGAlgebra(F, B, d, t);
}

DGBimodule regular_bimodule(std::shared_ptr<const DGAlgebra> R) {
  std::vector<SparseVec> d(R->dim());
  for (Index i = 0; i < R->dim(); ++i) d[i] = R->d(i);
  std::optional<DegreeWindow> complete;
  if (R->truncated()) complete = R->complete();
  return DGBimodule(R, R, R->basis(), d, R->table(), R->table(), complete);
}

DGBimodule free_bimodule(std::shared_ptr<const DGAlgebra> R, std::shared_ptr<const DGAlgebra> S) {
  require_complete(*R, "free bimodule");
  require_complete(*S, "free bimodule");
  const Field& F = R->field();
  const Index nr = R->dim(), ns = S->dim(), n = nr * ns;
  GradedBasis B;
  for (Index r = 0; r < nr; ++r)
    for (Index s = 0; s < ns; ++s) {
      B.degree.push_back(R->degree(r) + S->degree(s));
      B.labels.push_back(label_of(R->basis(), r) + "⊗" + label_of(S->basis(), s));
    }
  auto outer = [&](const SparseVec& x, const SparseVec& y) {
    std::vector<std::pair<Index, Scalar>> terms;
    for (const auto& [i, u] : x)
      for (const auto& [j, v] : y) terms.emplace_back(i * ns + j, F.mul(u, v));
    return collect(F, terms);
  };
  std::vector<SparseVec> d(n);
  StructureTable left(nr, n), right(n, ns);
  for (Index r = 0; r < nr; ++r)
    for (Index s = 0; s < ns; ++s) {
      Index m = r * ns + s;
      d[m] = axpy(F, outer(R->d(r), unit_vector(s)), F.sign(R->degree(r)), outer(unit_vector(r), S->d(s)));
      for (Index r2 = 0; r2 < nr; ++r2) left.at(r2, m) = outer(R->product(r2, r), unit_vector(s));
      for (Index s2 = 0; s2 < ns; ++s2) right.at(m, s2) = outer(unit_vector(r), S->product(s, s2));
    }
  return DGBimodule(R, S, B, d, left, right);
}

DGBimodule bimodule_direct_sum(const DGBimodule& a, const DGBimodule& b) {
  const Index na = a.dim(), nb = b.dim(), n = na + nb;
  const Index nr = a.left_algebra().dim(), ns = a.right_algebra().dim();
  GradedBasis B = a.basis();
  B.degree.insert(B.degree.end(), b.basis().degree.begin(), b.basis().degree.end());
  if (B.labels.size() != na) {
    B.labels.clear();
    for (Index i = 0; i < na; ++i) B.labels.push_back(label_of(a.basis(), i));
  }
  for (Index i = 0; i < nb; ++i) B.labels.push_back(label_of(b.basis(), i) + "'");
  std::vector<SparseVec> d(n);
  StructureTable left(nr, n), right(n, ns);
  for (Index m = 0; m < na; ++m) {
    d[m] = a.d(m);
    for (Index r = 0; r < nr; ++r) left.at(r, m) = a.left_table().at(r, m);
    for (Index s = 0; s < ns; ++s) right.at(m, s) = a.right_table().at(m, s);
  }
  for (Index m = 0; m < nb; ++m) {
    d[na + m] = shifted(b.d(m), na);
    for (Index r = 0; r < nr; ++r) left.at(r, na + m) = shifted(b.left_table().at(r, m), na);
    for (Index s = 0; s < ns; ++s) right.at(na + m, s) = shifted(b.right_table().at(m, s), na);
  }
  return DGBimodule(a.left_ptr(), a.right_ptr(), B, d, left, right);
}

DGBimodule contractible_cone(const DGBimodule& M) {
  const Field& F = M.field();
  const DGAlgebra& R = M.left_algebra();
  const Index nm = M.dim(), n = 2 * nm;
  const Index nr = R.dim(), ns = M.right_algebra().dim();
  GradedBasis B;
  for (Index i = 0; i < nm; ++i) {
    B.degree.push_back(M.degree(i) - 1);
    B.labels.push_back("s" + label_of(M.basis(), i));
  }
  for (Index i = 0; i < nm; ++i) {
    B.degree.push_back(M.degree(i));
    B.labels.push_back(label_of(M.basis(), i));
  }
  std::vector<SparseVec> d(n);
  StructureTable left(nr, n), right(n, ns);
  const Scalar minus = F.from_int(-1);
  for (Index m = 0; m < nm; ++m) {
    d[m] = add(F, scaled(F, M.d(m), minus), unit_vector(nm + m));
    d[nm + m] = shifted(M.d(m), nm);
    for (Index r = 0; r < nr; ++r) {
      const auto& e = M.left_table().at(r, m);
      if (e) left.at(r, m) = scaled(F, *e, F.sign(R.degree(r)));
      else left.at(r, m) = std::nullopt;
      left.at(r, nm + m) = shifted(e, nm);
    }
    for (Index s = 0; s < ns; ++s) {
      right.at(m, s) = M.right_table().at(m, s);
      right.at(nm + m, s) = shifted(M.right_table().at(m, s), nm);
    }
  }
  return DGBimodule(M.left_ptr(), M.right_ptr(), B, d, left, right);
}

DGBimodule suspend_bimodule(const DGBimodule& M, int shift) {
  const Field& F = M.field();
  const DGAlgebra& R = M.left_algebra();
  GradedBasis B = M.basis();
  for (auto& deg : B.degree) deg -= shift;
  std::vector<SparseVec> d(M.dim());
  StructureTable left(R.dim(), M.dim());
  for (Index m = 0; m < M.dim(); ++m) {
    d[m] = scaled(F, M.d(m), F.sign(shift));
    for (Index r = 0; r < R.dim(); ++r) {
      const auto& e = M.left_table().at(r, m);
      left.at(r, m) = e ? std::optional<SparseVec>(scaled(F, *e, F.sign(shift * R.degree(r))))
                        : std::nullopt;
    }
  }
  return DGBimodule(M.left_ptr(), M.right_ptr(), B, d, left, M.right_table());
}

DGAlgebra square_zero_extension(const DGAlgebra& R, const DGBimodule& M) {
  if (M.dim() == 0) return R;
  const Index nr = R.dim(), nm = M.dim(), n = nr + nm;
  GradedBasis B = R.basis();
  if (B.labels.size() != nr) {
    B.labels.clear();
    for (Index i = 0; i < nr; ++i) B.labels.push_back(label_of(R.basis(), i));
  }
  for (Index i = 0; i < nm; ++i) {
    B.degree.push_back(M.degree(i));
    B.labels.push_back("m" + std::to_string(i));
  }
  auto defined = [](const auto& f) -> std::optional<SparseVec> {
    try {
      return f();
    } catch (const HorizonExceeded&) {
      return std::nullopt;
    }
  };
  std::vector<SparseVec> d(n);
  StructureTable t(n, n);
  for (Index a = 0; a < nr; ++a) {
    d[a] = R.d(a);
    for (Index b = 0; b < nr; ++b) t.at(a, b) = R.table().at(a, b);
    for (Index m = 0; m < nm; ++m) {
      t.at(a, nr + m) = defined([&] { return shifted(M.left(a, m), nr); });
      t.at(nr + m, a) = defined([&] { return shifted(M.right(m, a), nr); });
    }
  }
  for (Index m = 0; m < nm; ++m) d[nr + m] = shifted(M.d(m), nr);
  std::vector<int> weight(n, 1);
  weight[0] = 0;
  std::optional<DegreeWindow> complete;
  if (R.truncated() || M.truncated()) {
    for (Index a = 0; a < nr; ++a) weight[a] = R.weight(a);
    DegreeWindow c = R.truncated() ? R.complete() : M.complete();
    if (R.truncated() && M.truncated())
      c = DegreeWindow{std::max(c.lo, M.complete().lo), std::min(c.hi, M.complete().hi)};
    complete = c;
  }
  return DGAlgebra(R.field(), B, d, t, weight, complete);
}

Index homology_dim(const DGAlgebra& A, int n) {
  if (A.basis().in_degree(n).empty() && (!A.truncated() || A.complete().contains(n))) return 0;
  return homology_at(A.complex(), n).dim();
}

bool is_strict(const DGAlgebra& S) {
  for (Index i = 0; i < S.dim(); ++i)
    if (S.degree(i) == -1 && !S.d(i).empty()) return false;
  return true;
}

namespace {

void require_degree0_cocycle(const DGAlgebra& S, const SparseVec& x) {
  for (const auto& [i, c] : x)
    if (i >= S.dim() || S.degree(i) != 0) throw ValidationError("element must lie in degree 0");
  if (!S.apply_d(x).empty()) throw ValidationError("element is not a cocycle");
}

}  // namespace

std::optional<SparseVec> is_homotopy_invertible(const DGAlgebra& S, const SparseVec& x) {
  require_degree0_cocycle(S, x);
  const Field& F = S.field();
  const Index n = S.dim();
  auto y_idx = S.basis().in_degree(0);
  auto u_idx = S.basis().in_degree(-1);
  // Unknowns (y, u, v); equations x·y − du = 1, y·x − dv = 1, dy = 0 in S ⊕ S ⊕ S.
  Matrix A(3 * n, y_idx.size() + 2 * u_idx.size());
  Index col = 0;
  for (Index j : y_idx) {
    SparseVec c = S.multiply(x, unit_vector(j));
    c = add(F, c, shifted(S.multiply(unit_vector(j), x), n));
    c = add(F, c, shifted(S.d(j), 2 * n));
    A.columns[col++] = c;
  }
  const Scalar minus = F.from_int(-1);
  for (Index u : u_idx) A.columns[col++] = scaled(F, S.d(u), minus);
  for (Index v : u_idx) A.columns[col++] = shifted(scaled(F, S.d(v), minus), n);
  SparseVec rhs{{0, Scalar(1)}, {n, Scalar(1)}};
  auto sol = solve(F, A, rhs);
  if (!sol) return std::nullopt;
  SparseVec y;
  for (const auto& [k, c] : *sol)
    if (k < y_idx.size()) y.emplace_back(y_idx[k], c);
  return collect(F, y);
}

std::optional<SparseVec> strict_inverse(const DGAlgebra& S, const SparseVec& x) {
  require_degree0_cocycle(S, x);
  const Field& F = S.field();
  const Index n = S.dim();
  auto y_idx = S.basis().in_degree(0);
  Matrix A(2 * n, y_idx.size());
  for (Index k = 0; k < y_idx.size(); ++k)
    A.columns[k] = add(F, S.multiply(x, unit_vector(y_idx[k])),
                       shifted(S.multiply(unit_vector(y_idx[k]), x), n));
  auto sol = solve(F, A, SparseVec{{0, Scalar(1)}, {n, Scalar(1)}});
  if (!sol) return std::nullopt;
  SparseVec y;
  for (const auto& [k, c] : *sol) y.emplace_back(y_idx[k], c);
  return collect(F, y);
}

bool is_connective(const DGAlgebra& S, DegreeWindow window) {
  DegreeWindow s = S.basis().support();
  if (S.truncated() && S.complete().lo > window.lo)
    throw WindowError("algebra is not complete down to the requested window");
  if (!s.empty() && s.lo < window.lo)
    throw WindowError("support extends below the window; connectivity cannot be decided");
  ChainComplex C = S.complex();
  for (int n = std::max(window.lo, s.lo); n < 0 && n <= window.hi; ++n)
    if (homology_at(C, n).dim() != 0) return false;
  return true;
}

DGBimodule restrict_bimodule(const AlgebraMap& phi, const DGBimodule& M, bool both_sides) {
  const DGAlgebra& R = *phi.source;
  const Index n = M.dim();
  StructureTable left(R.dim(), n);
  for (Index r = 0; r < R.dim(); ++r)
    for (Index m = 0; m < n; ++m) {
      try {
        left.at(r, m) = M.act_left(phi.matrix.columns[r], unit_vector(m));
      } catch (const HorizonExceeded&) {
        left.at(r, m) = std::nullopt;
      }
    }
  StructureTable right = M.right_table();
  auto right_alg = M.right_ptr();
  if (both_sides) {
    right = StructureTable(n, R.dim());
    for (Index m = 0; m < n; ++m)
      for (Index r = 0; r < R.dim(); ++r) {
        try {
          right.at(m, r) = M.act_right(unit_vector(m), phi.matrix.columns[r]);
        } catch (const HorizonExceeded&) {
          right.at(m, r) = std::nullopt;
        }
      }
    right_alg = phi.source;
  }
  std::vector<SparseVec> d(n);
  for (Index m = 0; m < n; ++m) d[m] = M.d(m);
  std::optional<DegreeWindow> complete;
  if (M.truncated()) complete = M.complete();
  return DGBimodule(phi.source, right_alg, M.basis(), d, left, right, complete);
}

AlgebraMap identity_algebra_map(std::shared_ptr<const DGAlgebra> A) {
  return AlgebraMap{A, A, Matrix::identity(A->dim())};
}

AlgebraMap unit_map(std::shared_ptr<const DGAlgebra> S) {
  auto k = std::make_shared<const DGAlgebra>(ground_algebra(S->field()));
  Matrix m(S->dim(), 1);
  m.columns[0] = unit_vector(0);
  return AlgebraMap{k, S, m};
}

}  // namespace dga
