#include "dga/free_construction.hpp"

#include <algorithm>
#include <functional>

namespace dga {

namespace {

constexpr std::size_t kMaxWords = 2000000;

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

int word_degree(const DGBimodule& X, const Word& w) {
  int d = 0;
  for (Index x : w) d += X.degree(x);
  return d;
}

}  // namespace

void add_to(const Field& F, WordVec& v, const Word& w, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = v.emplace(w, F.reduce(c));
  if (fresh) return;
  it->second = F.add(it->second, c);
  if (it->second == 0) v.erase(it);
}

WordVec concat(const Field& F, const WordVec& a, const WordVec& b) {
  WordVec out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      add_to(F, out, w, F.mul(x, y));
    }
  return out;
}

TensorAlgebraTrunc::TensorAlgebraTrunc(PointedBimodule X, int max_length, DegreeWindow window)
    : X_(std::move(X)), L_(max_length), window_(window) {
  if (L_ < 1) throw ValidationError("word length cap must be at least 1");
  if (X_.base.truncated()) throw ScopeError("generating bimodule must be finite");
  const Index n = X_.base.dim();
  std::size_t total = 1, layer = 1;
  for (int l = 1; l <= L_; ++l) {
    layer *= std::max<Index>(n, 1);
    total += layer;
    if (total > kMaxWords) throw ScopeError("too many words; lower the word length cap");
  }
  Word w;
  std::function<void(int)> dfs = [&](int deg) {
    if (window_.contains(deg)) words_[deg].push_back(w);
    if (static_cast<int>(w.size()) == L_) return;
    for (Index x = 0; x < n; ++x) {
      w.push_back(x);
      dfs(deg + X_.base.degree(x));
      w.pop_back();
    }
  };
  dfs(0);
  for (auto& [deg, ws] : words_) {
    std::sort(ws.begin(), ws.end(), word_less);
    auto& pos = position_[deg];
    for (Index i = 0; i < ws.size(); ++i) pos.emplace(ws[i], i);
  }
}

int TensorAlgebraTrunc::degree(const Word& w) const { return word_degree(X_.base, w); }

const std::vector<Word>& TensorAlgebraTrunc::words(int n) const {
  static const std::vector<Word> empty;
  auto it = words_.find(n);
  return it == words_.end() ? empty : it->second;
}

std::optional<Index> TensorAlgebraTrunc::position(int n, const Word& w) const {
  auto it = position_.find(n);
  if (it == position_.end()) return std::nullopt;
  auto jt = it->second.find(w);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

bool TensorAlgebraTrunc::admissible(const Word& w) const {
  return static_cast<int>(w.size()) <= L_ && window_.contains(degree(w));
}

WordVec TensorAlgebraTrunc::d(const Word& w) const {
  const Field& F = field();
  WordVec out;
  int before = 0;
  for (Index i = 0; i < w.size(); ++i) {
    Scalar sign = F.sign(before);
    for (const auto& [y, c] : X_.base.d(w[i])) {
      Word u = w;
      u[i] = y;
      add_to(F, out, u, F.mul(sign, c));
    }
    before += X_.base.degree(w[i]);
  }
  return out;
}

WordVec TensorAlgebraTrunc::d(const WordVec& v) const {
  const Field& F = field();
  WordVec out;
  for (const auto& [w, c] : v)
    for (const auto& [u, x] : d(w)) add_to(F, out, u, F.mul(c, x));
  return out;
}

bool TensorAlgebraTrunc::boundary_complete(const Word& w) const {
  return window_.contains(degree(w) + 1) || d(w).empty();
}

WordVec TensorAlgebraTrunc::letter(const SparseVec& x) const {
  WordVec out;
  for (const auto& [i, c] : x) add_to(field(), out, Word{i}, c);
  return out;
}

WordVec TensorAlgebraTrunc::point() const { return letter(X_.point); }

IdealSpan::IdealSpan(std::shared_ptr<const TensorAlgebraTrunc> T, bool unit_relation)
    : T_(std::move(T)), unit_relation_(unit_relation) {
  const DGBimodule& X = T_->module();
  const Field& F = X.field();
  const DGAlgebra& R = X.left_algebra();
  const DGAlgebra& S = X.right_algebra();
  const SparseVec& p = T_->generators().point;
  auto push = [&](WordVec g) {
    if (!g.empty()) generators_.push_back(std::move(g));
  };
  for (Index x = 0; x < X.dim(); ++x)
    for (Index s = 0; s < S.dim(); ++s) {
      WordVec g = concat(F, T_->letter(unit_vector(x)), T_->letter(X.act_right(p, unit_vector(s))));
      for (const auto& [w, c] : T_->letter(X.right(x, s))) add_to(F, g, w, F.neg(c));
      push(std::move(g));
    }
  for (Index r = 0; r < R.dim(); ++r)
    for (Index y = 0; y < X.dim(); ++y) {
      WordVec g = concat(F, T_->letter(X.act_left(unit_vector(r), p)), T_->letter(unit_vector(y)));
      for (const auto& [w, c] : T_->letter(X.left(r, y))) add_to(F, g, w, F.neg(c));
      push(std::move(g));
    }
  if (unit_relation_) {
    WordVec g = T_->point();
    add_to(F, g, Word{}, F.from_int(-1));
    push(std::move(g));
  }
  // Left and right factors: all words up to length L - 1 by (length, degree).
  Word w;
  std::function<void()> dfs = [&]() {
    factors_[{static_cast<int>(w.size()), word_degree(X, w)}].push_back(w);
    if (static_cast<int>(w.size()) + 1 >= T_->max_length()) return;
    for (Index x = 0; x < X.dim(); ++x) {
      w.push_back(x);
      dfs();
      w.pop_back();
    }
  };
  dfs();
}

SparseVec IdealSpan::coordinates(int n, const WordVec& v) const {
  const auto& ws = T_->words(n);
  std::vector<std::pair<Index, Scalar>> terms;
  for (const auto& [w, c] : v) {
    auto pos = T_->position(n, w);
    if (!pos) throw std::logic_error("word outside the truncation");
    // Largest word first, so that echelon pivots are the largest words.
    terms.emplace_back(ws.size() - 1 - *pos, c);
  }
  return collect(T_->field(), std::move(terms));
}

const IdealSpan::Slice& IdealSpan::slice(int n) const {
  auto found = slices_.find(n);
  if (found != slices_.end()) return found->second;
  const TensorAlgebraTrunc& T = *T_;
  const DGBimodule& X = T.module();
  const Field& F = T.field();
  const int L = T.max_length();
  const auto& factors = factors_;
  Slice sl{Echelon(F), {}, {}, {}};
  for (const WordVec& g : generators_) {
    int glen = 0;
    for (const auto& [w, c] : g) glen = std::max(glen, static_cast<int>(w.size()));
    const int gdeg = word_degree(X, g.begin()->first);
    for (const auto& [ukey, us] : factors) {
      const auto [ulen, udeg] = ukey;
      for (int vlen = 0; ulen + glen + vlen <= L; ++vlen) {
        auto vit = factors.find({vlen, n - gdeg - udeg});
        if (vit == factors.end()) continue;
        for (const Word& u : us)
          for (const Word& v : vit->second) {
            WordVec e;
            for (const auto& [w, c] : g) {
              Word full = u;
              full.insert(full.end(), w.begin(), w.end());
              full.insert(full.end(), v.begin(), v.end());
              add_to(F, e, full, c);
            }
            if (e.empty()) continue;
            if (!sl.echelon.insert(coordinates(n, e))) sl.basis.push_back(std::move(e));
          }
      }
    }
  }
  const auto& ws = T.words(n);
  for (Index i = 0; i < ws.size(); ++i)
    if (!sl.echelon.is_pivot(ws.size() - 1 - i)) {
      sl.rep_position.emplace(ws[i], sl.reps.size());
      sl.reps.push_back(ws[i]);
    }
  return slices_.emplace(n, std::move(sl)).first->second;
}

Index IdealSpan::rank(int n) const { return slice(n).echelon.rank(); }

const std::vector<WordVec>& IdealSpan::basis(int n) const { return slice(n).basis; }

const std::vector<Word>& IdealSpan::representatives(int n) const { return slice(n).reps; }

SparseVec IdealSpan::reduce(int n, const WordVec& v) const {
  const Slice& sl = slice(n);
  const auto& ws = T_->words(n);
  auto r = sl.echelon.reduce(coordinates(n, v));
  std::vector<std::pair<Index, Scalar>> out;
  for (const auto& [i, c] : r.remainder) out.emplace_back(sl.rep_position.at(ws[ws.size() - 1 - i]), c);
  return collect(T_->field(), std::move(out));
}

bool IdealSpan::contains(const WordVec& v) const {
  std::map<int, WordVec> parts;
  for (const auto& [w, c] : v) parts[T_->degree(w)].emplace(w, c);
  for (const auto& [n, part] : parts)
    if (!reduce(n, part).empty()) return false;
  return true;
}

FreeAlgebraQuotient::FreeAlgebraQuotient(PointedBimodule X, const FreeOptions& opt) : opt_(opt) {
  validate_pointed(X);
  built_ = {opt.window.lo - 1, opt.window.hi + 2};
  T_ = std::make_shared<const TensorAlgebraTrunc>(std::move(X), opt.max_length, built_);
  I_ = std::make_shared<const IdealSpan>(T_, opt.unit_relation);
  const Field& F = T_->field();
  words_.push_back(Word{});
  for (int n = built_.lo; n <= built_.hi; ++n)
    for (const Word& w : I_->representatives(n))
      if (!w.empty()) words_.push_back(w);
  GradedBasis basis;
  std::vector<int> weight;
  for (Index i = 0; i < words_.size(); ++i) {
    const Word& w = words_[i];
    global_.emplace(w, i);
    int deg = T_->degree(w);
    global_by_degree_[deg].push_back(i);
    basis.degree.push_back(deg);
    weight.push_back(static_cast<int>(w.size()));
    std::string label;
    const auto& names = T_->module().basis().labels;
    for (Index k = 0; k < w.size(); ++k)
      label += (k ? "|" : "") + (w[k] < names.size() ? names[w[k]] : "e" + std::to_string(w[k]));
    basis.labels.push_back(w.empty() ? "1" : "[" + label + "]");
  }
  // Words in global order within each degree follow the representative order.
  for (auto& [deg, idx] : global_by_degree_)
    std::sort(idx.begin(), idx.end(), [&](Index a, Index b) { return word_less(words_[a], words_[b]); });
  const Index n = words_.size();
  std::vector<SparseVec> d(n);
  StructureTable mult(n, n);
  for (Index i = 0; i < n; ++i) {
    if (built_.contains(basis.degree[i] + 1)) d[i] = project(T_->d(words_[i]));
    for (Index j = 0; j < n; ++j) {
      Word w = words_[i];
      w.insert(w.end(), words_[j].begin(), words_[j].end());
      if (!T_->admissible(w)) {
        mult.at(i, j) = std::nullopt;
        continue;
      }
      WordVec v;
      add_to(F, v, w, Scalar(1));
      mult.at(i, j) = project(v);
    }
  }
  A_ = std::make_shared<const DGAlgebra>(F, std::move(basis), std::move(d), std::move(mult),
                                         std::move(weight), built_);
}

Index FreeAlgebraQuotient::dim(int n) const {
  auto it = global_by_degree_.find(n);
  return it == global_by_degree_.end() ? 0 : it->second.size();
}

SparseVec FreeAlgebraQuotient::project(const WordVec& v) const {
  std::map<int, WordVec> parts;
  for (const auto& [w, c] : v) parts[T_->degree(w)].emplace(w, c);
  std::vector<std::pair<Index, Scalar>> out;
  for (const auto& [n, part] : parts) {
    if (!built_.contains(n)) throw HorizonExceeded("degree " + std::to_string(n) + " outside the window");
    const auto& reps = I_->representatives(n);
    for (const auto& [k, c] : I_->reduce(n, part)) out.emplace_back(global_.at(reps[k]), c);
  }
  return collect(T_->field(), std::move(out));
}

SparseVec FreeAlgebraQuotient::to_local(const SparseVec& v, int n) const {
  const auto& idx = global_by_degree_.at(n);
  std::vector<std::pair<Index, Scalar>> out;
  for (const auto& [i, c] : v) {
    auto it = std::find(idx.begin(), idx.end(), i);
    if (it == idx.end()) throw std::logic_error("element not in degree " + std::to_string(n));
    out.emplace_back(static_cast<Index>(it - idx.begin()), c);
  }
  return collect(T_->field(), std::move(out));
}

ChainComplex FreeAlgebraQuotient::complex() const {
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = built_.lo; n <= built_.hi; ++n) dims[n] = dim(n);
  for (int n = built_.lo; n < built_.hi; ++n) {
    Matrix m(dims[n + 1], dims[n]);
    if (dims[n] > 0) {
      const auto& idx = global_by_degree_.at(n);
      for (Index j = 0; j < idx.size(); ++j)
        if (!A_->d(idx[j]).empty()) m.columns[j] = to_local(A_->d(idx[j]), n + 1);
    }
    ds.emplace(n, std::move(m));
  }
  return ChainComplex(T_->field(), built_, std::move(dims), std::move(ds), false);
}

AlgebraMap FreeAlgebraQuotient::left_structure() const {
  const DGBimodule& X = T_->module();
  Matrix m(A_->dim(), X.left_algebra().dim());
  for (Index r = 0; r < m.cols; ++r)
    m.columns[r] = project(T_->letter(X.act_left(unit_vector(r), T_->generators().point)));
  return AlgebraMap{X.left_ptr(), A_, std::move(m)};
}

AlgebraMap FreeAlgebraQuotient::right_structure() const {
  const DGBimodule& X = T_->module();
  Matrix m(A_->dim(), X.right_algebra().dim());
  for (Index s = 0; s < m.cols; ++s)
    m.columns[s] = project(T_->letter(X.act_right(T_->generators().point, unit_vector(s))));
  return AlgebraMap{X.right_ptr(), A_, std::move(m)};
}

WordVec reduce_word(const FreeAlgebraQuotient& F, const Word& w, bool full) {
  const TensorAlgebraTrunc& T = F.tensor();
  const DGBimodule& X = T.module();
  if (full) {
    const DGAlgebra& S = X.right_algebra();
    bool is_S = X.dim() == S.dim();
    for (Index i = 0; is_S && i < X.dim(); ++i)
      for (Index j = 0; is_S && j < S.dim(); ++j) is_S = X.right(i, j) == S.product(i, j);
    if (!is_S || !strict_inverse(S, T.generators().point))
      throw ScopeError("full reduction needs X = S pointed by a strictly invertible element");
  }
  WordVec v;
  add_to(T.field(), v, w, Scalar(1));
  WordVec out;
  for (const auto& [i, c] : F.project(v)) add_to(T.field(), out, F.basis_words()[i], c);
  if (full)
    for (const auto& [u, c] : out)
      if (u.size() > 1) throw std::logic_error("normal form longer than one letter");
  return out;
}

FreeStability free_stability(const PointedBimodule& X, const FreeOptions& opt) {
  FreeAlgebraQuotient a(X, opt);
  FreeOptions next = opt;
  ++next.max_length;
  FreeAlgebraQuotient b(X, next);
  FreeStability out;
  bool same = true;
  for (int n = opt.window.lo; n <= opt.window.hi; ++n) {
    out.dims[n] = {a.dim(n), b.dim(n)};
    same = same && a.dim(n) == b.dim(n);
  }
  out.status = same ? Status::Stabilized : Status::Unstable;
  return out;
}

}  // namespace dga
