#include "dga/complex.hpp"

#include <algorithm>
#include <sstream>

namespace dga {

namespace {

constexpr int kFar = kUnboundedDegree;

std::string window_text(DegreeWindow w) {
  std::ostringstream os;
  os << "[" << w.lo << ", " << w.hi << "]";
  return os.str();
}

// Range over which dims/differentials of X can be queried.
DegreeWindow effective_range(const ChainComplex& X) {
  return X.bounded() ? DegreeWindow{-kFar, kFar} : X.range();
}

}  // namespace

ChainComplex::ChainComplex(Field F, DegreeWindow range, std::map<int, Index> dims,
                           std::map<int, Matrix> differentials, bool bounded,
                           std::map<int, std::vector<std::string>> labels)
    : F_(F), range_(range), bounded_(bounded), labels_(std::move(labels)) {
  for (auto& [n, k] : dims) {
    if (!range_.contains(n) && k != 0)
      throw ValidationError("dimension declared outside represented range at degree " +
                            std::to_string(n));
    if (k != 0) dims_[n] = k;
  }
  for (auto& [n, m] : differentials) {
    if (!(range_.contains(n) && range_.contains(n + 1))) {
      if (!m.is_zero())
        throw ValidationError("differential out of represented range at degree " +
                              std::to_string(n));
      continue;
    }
    if (m.cols != dim(n) || m.rows != dim(n + 1))
      throw ValidationError("differential d^" + std::to_string(n) + " has wrong shape");
    if (!m.is_zero()) d_[n] = std::move(m);
  }
  for (int n = range_.lo; n + 1 < range_.hi; ++n) {
    if (!d_.count(n) || !d_.count(n + 1)) continue;
    if (!compose(F_, d_.at(n + 1), d_.at(n)).is_zero())
      throw ValidationError("d∘d != 0 at degree " + std::to_string(n));
  }
}

ChainComplex ChainComplex::zero(Field F) { return ChainComplex(F, {0, -1}, {}, {}, true); }

ChainComplex ChainComplex::ground(Field F, int degree) {
  return ChainComplex(F, {degree, degree}, {{degree, 1}}, {}, true);
}

Index ChainComplex::dim(int n) const {
  if (!range_.contains(n)) {
    if (bounded_ || (n < range_.lo && zero_below_) || (n > range_.hi && zero_above_)) return 0;
    throw WindowError("degree " + std::to_string(n) + " outside represented range " +
                      window_text(range_));
  }
  auto it = dims_.find(n);
  return it == dims_.end() ? 0 : it->second;
}

bool ChainComplex::has_differential(int n) const {
  return bounded_ || ((zero_below_ || range_.lo <= n) && (zero_above_ || n < range_.hi));
}

Matrix ChainComplex::d(int n) const {
  if (!has_differential(n))
    throw WindowError("differential d^" + std::to_string(n) + " outside represented range " +
                      window_text(range_));
  auto it = d_.find(n);
  if (it != d_.end()) return it->second;
  return Matrix::zero(dim(n + 1), dim(n));
}

DegreeWindow ChainComplex::certified() const {
  if (bounded_) return {-kFar, kFar};
  return {zero_below_ ? -kFar : range_.lo + 1, zero_above_ ? kFar : range_.hi - 1};
}

ChainComplex& ChainComplex::set_zero_outside(bool below, bool above) {
  zero_below_ = below;
  zero_above_ = above;
  return *this;
}

const std::vector<std::string>* ChainComplex::labels(int n) const {
  auto it = labels_.find(n);
  return it == labels_.end() ? nullptr : &it->second;
}

DegreeWindow ChainComplex::support() const {
  if (dims_.empty()) return {0, -1};
  return {dims_.begin()->first, dims_.rbegin()->first};
}

ChainComplex ChainComplex::restrict_to(DegreeWindow w) const {
  DegreeWindow r{std::max(w.lo, range_.lo), std::min(w.hi, range_.hi)};
  if (bounded_) r = w;
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = r.lo; n <= r.hi; ++n) {
    dims[n] = dim(n);
    if (n < r.hi) ds.emplace(n, d(n));
  }
  bool still_bounded = bounded_ && w.contains(support());
  ChainComplex out(F_, r, std::move(dims), std::move(ds), still_bounded);
  return out.set_zero_outside(zero_below_ && w.lo <= range_.lo, zero_above_ && w.hi >= range_.hi);
}

HomologyGroup::HomologyGroup(const Field& F, int degree, Matrix incoming, Matrix outgoing)
    : F_(F), degree_(degree), outgoing_(std::move(outgoing)), classifier_(F, true) {
  std::vector<SparseVec> cocycles = kernel(F_, outgoing_);
  cocycle_dim_ = cocycles.size();
  for (const auto& b : incoming.columns) classifier_.insert(b);
  boundary_rank_ = classifier_.rank();
  for (auto& z : cocycles) {
    const Index tag = classifier_.inserted();
    if (classifier_.insert(z)) continue;
    rep_of_tag_.emplace(tag, reps_.size());
    reps_.push_back(std::move(z));
  }
}

bool HomologyGroup::is_cocycle(const SparseVec& v) const { return apply(F_, outgoing_, v).empty(); }

bool HomologyGroup::is_boundary(const SparseVec& v) const {
  if (!is_cocycle(v)) return false;
  SparseVec c = coordinates(v);
  return c.empty();
}

SparseVec HomologyGroup::coordinates(const SparseVec& v) const {
  auto r = classifier_.reduce(v);
  if (!r.remainder.empty())
    throw std::logic_error("vector is not a cocycle in degree " + std::to_string(degree_));
  SparseVec out;
  for (const auto& [i, x] : r.combination)
    if (auto t = rep_of_tag_.find(i); t != rep_of_tag_.end()) out.emplace_back(t->second, x);
  return out;
}

std::map<int, Index> HomologyResult::dims() const {
  std::map<int, Index> out;
  for (const auto& [n, g] : groups) out[n] = g.dim();
  return out;
}

HomologyGroup homology_at(const ChainComplex& C, int n) {
  if (!C.certified().contains(n))
    throw WindowError("homology in degree " + std::to_string(n) +
                      " is outside the certified window " + window_text(C.certified()));
  return HomologyGroup(C.field(), n, C.d(n - 1), C.d(n));
}

HomologyResult homology(const ChainComplex& C, DegreeWindow window) {
  if (!C.certified().contains(window))
    throw WindowError("window " + window_text(window) + " exceeds certified window " +
                      window_text(C.certified()));
  HomologyResult out;
  out.window = window;
  for (int n = window.lo; n <= window.hi; ++n) out.groups.emplace(n, homology_at(C, n));
  return out;
}

Matrix GradedMap::at(int n) const {
  auto it = components.find(n);
  if (it != components.end()) return it->second;
  return Matrix::zero(target.dim(n + shift), source.dim(n));
}

bool is_chain_map(const GradedMap& f) {
  const Field& F = f.source.field();
  DegreeWindow s = effective_range(f.source);
  DegreeWindow t = effective_range(f.target);
  int lo = std::max(s.lo, t.lo - f.shift);
  int hi = std::min(s.hi, t.hi - f.shift);
  if (f.source.bounded() && f.target.bounded()) {
    DegreeWindow ss = f.source.support();
    DegreeWindow ts = f.target.support();
    if (ss.empty()) return true;
    lo = std::min(ss.lo, ts.empty() ? ss.lo : ts.lo - f.shift) - 1;
    hi = std::max(ss.hi, ts.empty() ? ss.hi : ts.hi - f.shift) + 1;
  }
  for (int n = lo; n <= hi; ++n) {
    if (!f.source.has_differential(n) || !f.target.has_differential(n + f.shift)) continue;
    try {
      Matrix lhs = compose(F, f.target.d(n + f.shift), f.at(n));
      Matrix rhs = scaled(F, compose(F, f.at(n + 1), f.source.d(n)), F.sign(f.shift));
      if (!(lhs == rhs)) return false;
    } catch (const WindowError&) {
      continue;
    }
  }
  return true;
}

GradedMap identity_map(const ChainComplex& C) {
  GradedMap f{C, C, 0, {}};
  DegreeWindow r = C.bounded() ? C.support() : C.range();
  for (int n = r.lo; n <= r.hi; ++n) f.components[n] = Matrix::identity(C.dim(n));
  return f;
}

Matrix induced_on_homology(const GradedMap& f, const HomologyGroup& src, const HomologyGroup& tgt) {
  const Field& F = f.source.field();
  Matrix m(tgt.dim(), src.dim());
  Matrix fn = f.at(src.degree());
  for (Index j = 0; j < src.dim(); ++j)
    m.columns[j] = tgt.coordinates(apply(F, fn, src.representatives()[j]));
  return m;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  const Field& F = a.field();
  DegreeWindow r;
  bool bounded = a.bounded() && b.bounded();
  if (bounded) {
    DegreeWindow sa = a.support(), sb = b.support();
    if (sa.empty()) return b;
    if (sb.empty()) return a;
    r = {std::min(sa.lo, sb.lo), std::max(sa.hi, sb.hi)};
  } else {
    DegreeWindow ea = effective_range(a), eb = effective_range(b);
    r = {std::max(ea.lo, eb.lo), std::min(ea.hi, eb.hi)};
  }
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = r.lo; n <= r.hi; ++n) dims[n] = a.dim(n) + b.dim(n);
  for (int n = r.lo; n < r.hi; ++n) {
    Matrix da = a.d(n), db = b.d(n);
    Matrix m(dims[n + 1], dims[n]);
    for (Index j = 0; j < da.cols; ++j) m.columns[j] = da.columns[j];
    Index off = a.dim(n + 1);
    for (Index j = 0; j < db.cols; ++j) {
      SparseVec c;
      for (const auto& [i, x] : db.columns[j]) c.emplace_back(i + off, x);
      m.columns[a.dim(n) + j] = std::move(c);
    }
    ds.emplace(n, std::move(m));
  }
  return ChainComplex(F, r, std::move(dims), std::move(ds), bounded);
}

std::vector<PairIndex> hom_basis(const ChainComplex& M, const ChainComplex& N, int n) {
  std::vector<PairIndex> out;
  DegreeWindow sm = M.support();
  for (int i = sm.lo; i <= sm.hi; ++i)
    for (Index a = 0; a < M.dim(i); ++a)
      for (Index b = 0; b < N.dim(i + n); ++b) out.push_back({i, a, b});
  return out;
}

std::vector<PairIndex> tensor_basis(const ChainComplex& M, const ChainComplex& N, int n) {
  std::vector<PairIndex> out;
  DegreeWindow sm = M.support();
  for (int i = sm.lo; i <= sm.hi; ++i)
    for (Index a = 0; a < M.dim(i); ++a)
      for (Index b = 0; b < N.dim(n - i); ++b) out.push_back({i, a, b});
  return out;
}

namespace {

// Position lookup for PairIndex bases: offset of each left degree block.
struct PairLookup {
  std::map<int, Index> offset;
  std::map<int, Index> right_dim;
  Index locate(int i, Index a, Index b) const { return offset.at(i) + a * right_dim.at(i) + b; }
};

PairLookup hom_lookup(const ChainComplex& M, const ChainComplex& N, int n) {
  PairLookup L;
  Index off = 0;
  DegreeWindow sm = M.support();
  for (int i = sm.lo; i <= sm.hi; ++i) {
    L.offset[i] = off;
    L.right_dim[i] = N.dim(i + n);
    off += M.dim(i) * N.dim(i + n);
  }
  return L;
}

PairLookup tensor_lookup(const ChainComplex& M, const ChainComplex& N, int n) {
  PairLookup L;
  Index off = 0;
  DegreeWindow sm = M.support();
  for (int i = sm.lo; i <= sm.hi; ++i) {
    L.offset[i] = off;
    L.right_dim[i] = N.dim(n - i);
    off += M.dim(i) * N.dim(n - i);
  }
  return L;
}

void require_bounded(const ChainComplex& X, const char* what) {
  if (!X.bounded()) throw WindowError(std::string(what) + " requires finitely supported inputs");
}

}  // namespace

ChainComplex hom_complex(const ChainComplex& M, const ChainComplex& N) {
  require_bounded(M, "hom_complex");
  require_bounded(N, "hom_complex");
  const Field& F = M.field();
  DegreeWindow sm = M.support(), sn = N.support();
  if (sm.empty() || sn.empty()) return ChainComplex::zero(F);
  DegreeWindow r{sn.lo - sm.hi, sn.hi - sm.lo};
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = r.lo; n <= r.hi; ++n) dims[n] = hom_basis(M, N, n).size();
  for (int n = r.lo; n < r.hi; ++n) {
    auto basis = hom_basis(M, N, n);
    PairLookup tgt = hom_lookup(M, N, n + 1);
    Matrix m(dims[n + 1], dims[n]);
    const Scalar sgn = F.neg(F.sign(n));  // -(-1)^n
    for (Index col = 0; col < basis.size(); ++col) {
      auto [i, a, b] = basis[col];
      std::vector<std::pair<Index, Scalar>> terms;
      // d_N ∘ E_{i,a,b}
      Matrix dn = N.d(i + n);
      for (const auto& [c, x] : dn.columns[b]) terms.emplace_back(tgt.locate(i, a, c), x);
      // -(-1)^n E_{i,a,b} ∘ d_M : components E_{i-1,a',b}
      if (M.dim(i - 1) > 0) {
        Matrix dm = M.d(i - 1);
        for (Index ap = 0; ap < dm.cols; ++ap) {
          Scalar x = coefficient(dm.columns[ap], a);
          if (x != 0) terms.emplace_back(tgt.locate(i - 1, ap, b), F.mul(sgn, x));
        }
      }
      m.columns[col] = collect(F, std::move(terms));
    }
    ds.emplace(n, std::move(m));
  }
  return ChainComplex(F, r, std::move(dims), std::move(ds), true);
}

ChainComplex tensor_product(const ChainComplex& M, const ChainComplex& N) {
  require_bounded(M, "tensor_product");
  require_bounded(N, "tensor_product");
  const Field& F = M.field();
  DegreeWindow sm = M.support(), sn = N.support();
  if (sm.empty() || sn.empty()) return ChainComplex::zero(F);
  DegreeWindow r{sm.lo + sn.lo, sm.hi + sn.hi};
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = r.lo; n <= r.hi; ++n) dims[n] = tensor_basis(M, N, n).size();
  for (int n = r.lo; n < r.hi; ++n) {
    auto basis = tensor_basis(M, N, n);
    PairLookup tgt = tensor_lookup(M, N, n + 1);
    Matrix m(dims[n + 1], dims[n]);
    for (Index col = 0; col < basis.size(); ++col) {
      auto [i, a, b] = basis[col];
      std::vector<std::pair<Index, Scalar>> terms;
      Matrix dm = M.d(i);
      for (const auto& [ap, x] : dm.columns[a]) terms.emplace_back(tgt.locate(i + 1, ap, b), x);
      Matrix dn = N.d(n - i);
      Scalar s = F.sign(i);
      for (const auto& [bp, x] : dn.columns[b]) terms.emplace_back(tgt.locate(i, a, bp), F.mul(s, x));
      m.columns[col] = collect(F, std::move(terms));
    }
    ds.emplace(n, std::move(m));
  }
  return ChainComplex(F, r, std::move(dims), std::move(ds), true);
}

ChainComplex suspend(const ChainComplex& M, int m) {
  const Field& F = M.field();
  DegreeWindow r = M.range();
  DegreeWindow out{r.lo - m, r.hi - m};
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  std::map<int, std::vector<std::string>> labels;
  Scalar s = F.sign(m);
  for (int n = out.lo; n <= out.hi; ++n) {
    dims[n] = M.dim(n + m);
    if (auto* l = M.labels(n + m)) labels[n] = *l;
    if (n < out.hi) ds.emplace(n, scaled(F, M.d(n + m), s));
  }
  return ChainComplex(F, out, std::move(dims), std::move(ds), M.bounded(), std::move(labels));
}

ChainComplex cone(const GradedMap& f) {
  if (f.shift != 0) throw std::invalid_argument("cone requires a degree-0 chain map");
  const ChainComplex& S = f.source;
  const ChainComplex& T = f.target;
  const Field& F = S.field();
  bool bounded = S.bounded() && T.bounded();
  DegreeWindow r;
  if (bounded) {
    DegreeWindow ss = S.support(), ts = T.support();
    if (ss.empty() && ts.empty()) return ChainComplex::zero(F);
    int lo = kFar, hi = -kFar;
    if (!ss.empty()) lo = std::min(lo, ss.lo - 1), hi = std::max(hi, ss.hi - 1);
    if (!ts.empty()) lo = std::min(lo, ts.lo), hi = std::max(hi, ts.hi);
    r = {lo, hi};
  } else {
    DegreeWindow es = effective_range(S), et = effective_range(T);
    r = {std::max(es.lo - 1, et.lo), std::min(es.hi - 1, et.hi)};
  }
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = r.lo; n <= r.hi; ++n) dims[n] = S.dim(n + 1) + T.dim(n);
  for (int n = r.lo; n < r.hi; ++n) {
    Matrix m(dims[n + 1], dims[n]);
    Matrix dS = S.d(n + 1);
    Matrix fn = f.at(n + 1);
    Matrix dT = T.d(n);
    Index off = S.dim(n + 2);
    for (Index j = 0; j < S.dim(n + 1); ++j) {
      SparseVec c = scaled(F, dS.columns[j], F.from_int(-1));
      for (const auto& [i, x] : fn.columns[j]) c.emplace_back(i + off, x);
      m.columns[j] = std::move(c);
    }
    for (Index j = 0; j < T.dim(n); ++j) {
      SparseVec c;
      for (const auto& [i, x] : dT.columns[j]) c.emplace_back(i + off, x);
      m.columns[S.dim(n + 1) + j] = std::move(c);
    }
    ds.emplace(n, std::move(m));
  }
  return ChainComplex(F, r, std::move(dims), std::move(ds), bounded);
}

bool is_quasi_iso(const GradedMap& f, DegreeWindow window) {
  ChainComplex c = cone(f);
  if (!c.certified().contains(window))
    throw WindowError("cone is certified only on " + window_text(c.certified()) +
                      ", requested " + window_text(window));
  for (int n = window.lo; n <= window.hi; ++n)
    if (homology_at(c, n).dim() != 0) return false;
  return true;
}

HomologyGroup pi_n_mod_map(const ChainComplex& M, const ChainComplex& N, int n) {
  if (n < 0) throw ScopeError("pi_n of a mapping space needs n >= 0; use Ext for negative degrees");
  return homology_at(hom_complex(M, N), -n);
}

}  // namespace dga
