#include <algorithm>
#include <cmath>
#include <functional>

#include "dga/hochschild.hpp"

namespace dga {

namespace {

using Builder = std::function<HochschildComplex(int cutoff)>;

// H^k of the complex built at the requested cutoff, with its status.
CohomologyGroup cohomology_with_status(const Builder& build, int k, int reported_degree,
                                       const CohomologyOptions& opt) {
  HochschildComplex C = build(opt.cutoff);
  HomologyGroup H = C.cohomology(k);
  CohomologyGroup out;
  out.degree = reported_degree;
  out.dim = H.dim();
  out.cutoff = opt.cutoff;
  out.representatives = H.representatives();
  if (C.exact_in(k)) {
    out.status = Status::Exact;
  } else if (opt.stabilize) {
    HochschildComplex C1 = build(opt.cutoff + 1);
    const Field& F = C1.algebra().field();
    Index dim1 = C1.dim(k) - rank(F, C1.differential(k)) - rank(F, C1.differential(k - 1));
    out.status = dim1 == out.dim ? Status::Stabilized : Status::Unstable;
  } else {
    out.status = Status::Unstable;
  }
  return out;
}

Status complex_status(const DGBimodule& M, int n) {
  if (!M.truncated()) return Status::Exact;
  return M.complex().certified().contains(n) ? Status::Exact : Status::Unstable;
}

// Re-expresses a cochain of one complex in another with the same coefficients (by slot word).
SparseVec transfer(const HochschildComplex& from, const HochschildComplex& to, int n, const SparseVec& v) {
  const auto& cols = from.basis(n);
  std::vector<std::pair<Index, Scalar>> out;
  for (const auto& [j, x] : v) {
    const auto& c = cols[j];
    const BarSlot& s = from.slots()[c.slot];
    to.basis(n);
    auto ts = to.slot_index(s.word, s.input);
    if (!ts) throw std::logic_error("cochain slot missing from the target complex");
    auto idx = to.index_of(n, *ts, c.output);
    if (!idx) throw std::logic_error("cochain missing from the target complex");
    out.emplace_back(*idx, x);
  }
  return collect(from.algebra().field(), out);
}

Matrix classify_images(const HomologyGroup& target, const std::vector<SparseVec>& images) {
  Matrix m(target.dim(), images.size());
  for (Index j = 0; j < images.size(); ++j) m.columns[j] = target.coordinates(images[j]);
  return m;
}

}  // namespace

CohomologyGroup hh_group(const DGBimodule& M, int n, const CohomologyOptions& opt) {
  return cohomology_with_status(
      [&](int N) { return HochschildComplex::hochschild(M, N); }, n, n, opt);
}

CohomologyGroup ext_group(const DGBimodule& Nm, const DGBimodule& M, int n, const CohomologyOptions& opt) {
  return cohomology_with_status([&](int N) { return HochschildComplex::ext(Nm, M, N); }, n, n, opt);
}

CohomologyGroup der_group(const DGBimodule& M, int n, const CohomologyOptions& opt) {
  return cohomology_with_status(
      [&](int N) { return HochschildComplex::hochschild(M, N, true); }, n + 1, n, opt);
}

std::string verdict_text(Verdict v) {
  switch (v) {
    case Verdict::Exact: return "EXACT";
    case Verdict::NotExact: return "NOT-EXACT";
    default: return "UNDETERMINED";
  }
}

bool LESReport::all_determined_exact() const { return count(Verdict::NotExact) == 0; }

Index LESReport::count(Verdict v) const {
  return static_cast<Index>(
      std::count_if(nodes.begin(), nodes.end(), [&](const LESNode& n) { return n.verdict == v; }));
}

EdgeMap edge_map(const DGBimodule& M, int n, const CohomologyOptions& opt) {
  HochschildComplex C = HochschildComplex::hochschild(M, opt.cutoff);
  EdgeMap out;
  out.source = hh_group(M, n, opt);
  HomologyGroup HM = homology_at(M.complex(), n);
  out.target_dim = HM.dim();
  std::vector<SparseVec> images;
  for (const auto& rep : out.source.representatives) images.push_back(C.length_zero_part(n, rep));
  out.matrix = classify_images(HM, images);
  return out;
}

LESReport der_hh_les(const DGBimodule& M, DegreeWindow window, const CohomologyOptions& opt) {
  const Field& F = M.field();
  HochschildComplex C = HochschildComplex::hochschild(M, opt.cutoff);
  HochschildComplex P = HochschildComplex::hochschild(M, opt.cutoff, true);
  ChainComplex Mc = M.complex();

  struct Stage {
    LESNode node;
    std::optional<HomologyGroup> group;
  };
  std::vector<Stage> stages;
  auto der_node = [&](int n) {
    CohomologyGroup g = der_group(M, n, opt);
    return Stage{LESNode{"Der", n, g.dim, g.status, g.cutoff}, P.cohomology(n + 1)};
  };
  for (int n = window.lo; n <= window.hi; ++n) {
    if (n == window.lo) stages.push_back(der_node(n - 1));
    CohomologyGroup hh = hh_group(M, n, opt);
    stages.push_back({LESNode{"HH", n, hh.dim, hh.status, hh.cutoff}, C.cohomology(n)});
    HomologyGroup hm = homology_at(Mc, n);
    stages.push_back({LESNode{"H", n, hm.dim(), complex_status(M, n), opt.cutoff}, hm});
    stages.push_back(der_node(n));
  }
  // Maps leaving each stage: Der^{n-1} → HH^n (inclusion), HH^n → H^n(M) (edge),
  // H^n(M) → Der^n (connecting map m ↦ δm).
  std::vector<Matrix> maps;
  for (Index i = 0; i + 1 < stages.size(); ++i) {
    const Stage& a = stages[i];
    const Stage& b = stages[i + 1];
    const int n = b.node.degree;
    std::vector<SparseVec> images;
    if (a.node.label == "Der") {
      for (const auto& rep : a.group->representatives()) images.push_back(transfer(P, C, n, rep));
    } else if (a.node.label == "HH") {
      for (const auto& rep : a.group->representatives()) images.push_back(C.length_zero_part(n, rep));
    } else {
      for (const auto& rep : a.group->representatives()) {
        SparseVec cochain = C.from_length_zero(n, rep);
        SparseVec boundary = apply(F, C.differential(n), cochain);
        images.push_back(transfer(C, P, n + 1, boundary));
      }
    }
    maps.push_back(classify_images(*b.group, images));
  }
  LESReport report;
  for (const auto& s : stages) report.nodes.push_back(s.node);
  for (const auto& m : maps) report.outgoing_rank.push_back(rank(F, m));
  report.outgoing_rank.push_back(std::nullopt);
  for (Index i = 1; i + 1 < stages.size(); ++i) {
    LESNode& node = report.nodes[i];
    bool determined = node.status != Status::Unstable &&
                      report.nodes[i - 1].status != Status::Unstable &&
                      report.nodes[i + 1].status != Status::Unstable;
    if (!determined) continue;
    bool composite_zero = compose(F, maps[i], maps[i - 1]).is_zero();
    bool ranks = node.dim == *report.outgoing_rank[i - 1] + *report.outgoing_rank[i];
    node.verdict = composite_zero && ranks ? Verdict::Exact : Verdict::NotExact;
  }
  return report;
}

SparseVec cup_product(const HochschildComplex& C, const SparseVec& f, const SparseVec& g) {
  const Field& F = C.algebra().field();
  const DGBimodule& M = C.coefficients();
  const auto& cols = C.basis(0);
  std::vector<std::pair<Index, Scalar>> out;
  for (const auto& [i, x] : f) {
    const auto& cf = cols[i];
    const BarSlot sf = C.slots()[cf.slot];
    for (const auto& [j, y] : g) {
      const auto& cg = cols[j];
      const BarSlot sg = C.slots()[cg.slot];
      if (sf.weight + sg.weight > C.cutoff()) continue;
      std::vector<Index> word = sf.word;
      word.insert(word.end(), sg.word.begin(), sg.word.end());
      auto slot = C.slot_index(word, 0);
      if (!slot) continue;
      SparseVec prod = M.act_right(unit_vector(cf.output), unit_vector(cg.output));
      Scalar c = F.mul(x, y);
      for (const auto& [m, z] : prod) {
        auto idx = C.index_of(0, *slot, m);
        if (!idx) throw std::logic_error("cup product left the degree-0 cochains");
        out.emplace_back(*idx, F.mul(c, z));
      }
    }
  }
  return collect(F, out);
}

SparseVec HH0Ring::multiply(const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out = axpy(field, out, field.mul(x, y), products[i][j]);
  return out;
}

Matrix HH0Ring::left_multiplication(const SparseVec& a) const {
  Matrix m(group.dim, group.dim);
  for (Index j = 0; j < group.dim; ++j) m.columns[j] = multiply(a, unit_vector(j));
  return m;
}

HH0Ring hh0_ring(const DGBimodule& M, const CohomologyOptions& opt) {
  const Field& F = M.field();
  for (Index i = 0; i < M.dim(); ++i)
    if (M.right_table().at(i, 0) != unit_vector(i) || M.dim() != M.right_algebra().dim())
      throw ValidationError("hh0_ring needs the regular bimodule");
  HochschildComplex C = HochschildComplex::hochschild(M, opt.cutoff);
  HomologyGroup H = C.cohomology(0);
  HH0Ring ring;
  ring.field = F;
  ring.group = hh_group(M, 0, opt);
  const auto& reps = H.representatives();
  ring.products.assign(reps.size(), std::vector<SparseVec>(reps.size()));
  const Matrix& d0 = C.differential(0);
  for (Index i = 0; i < reps.size(); ++i)
    for (Index j = 0; j < reps.size(); ++j) {
      SparseVec cup = cup_product(C, reps[i], reps[j]);
      if (!apply(F, d0, cup).empty()) {
        ring.cup_closed = false;
        continue;
      }
      ring.products[i][j] = H.coordinates(cup);
    }
  const DGAlgebra& R = M.left_algebra();
  auto zero_basis = R.basis().in_degree(0);
  auto unit_pos = std::find(zero_basis.begin(), zero_basis.end(), Index{0}) - zero_basis.begin();
  SparseVec unit_local = unit_vector(static_cast<Index>(unit_pos));
  ring.unit = H.coordinates(C.from_length_zero(0, unit_local));
  HomologyGroup H0 = homology_at(M.complex(), 0);
  ring.h0_dim = H0.dim();
  std::vector<SparseVec> images;
  for (const auto& rep : reps) images.push_back(C.length_zero_part(0, rep));
  ring.edge = classify_images(H0, images);
  ring.h0_unit = H0.coordinates(unit_local);
  return ring;
}

std::vector<SparseVec> hh0_units(const HH0Ring& ring) {
  const Field& F = ring.field;
  if (!F.is_prime_field()) throw ScopeError("unit groups are enumerated over F_p only");
  const long p = F.characteristic();
  const Index d = ring.group.dim;
  double count = std::pow(static_cast<double>(p), static_cast<double>(d));
  if (count > 1e6) throw ScopeError("unit group enumeration too large");
  std::vector<SparseVec> units;
  std::vector<long> digits(d, 0);
  for (long k = 0; k < static_cast<long>(count); ++k) {
    long rest = k;
    SparseVec a;
    for (Index i = 0; i < d; ++i) {
      long c = rest % p;
      rest /= p;
      if (c) a.emplace_back(i, Scalar(c));
    }
    if (is_invertible(F, ring.left_multiplication(a))) units.push_back(a);
  }
  return units;
}

}  // namespace dga
