#include "dga/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace dga {

namespace {

struct BarTerm {
  Index left;  // 0 = unit
  std::vector<Index> word;
  SparseVec input;
  Index right;  // 0 = unit
  Scalar coeff;
};

DegreeWindow basis_support(const GradedBasis& B) { return B.support(); }

}  // namespace

std::string status_text(Status s, int cutoff) {
  switch (s) {
    case Status::Exact: return "EXACT";
    case Status::Stabilized: return "STABILIZED(" + std::to_string(cutoff) + ")";
    default: return "UNSTABLE(" + std::to_string(cutoff) + ")";
  }
}

Status weakest(Status a, Status b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

HochschildComplex HochschildComplex::hochschild(const DGBimodule& M, int cutoff, bool positive_only) {
  if (M.left_ptr() != M.right_ptr() && !(M.left_algebra().dim() == M.right_algebra().dim() &&
                                         M.left_algebra().table().entries ==
                                             M.right_algebra().table().entries))
    throw ValidationError("Hochschild coefficients must be a bimodule over (R, R)");
  if (cutoff < 0) throw ValidationError("cutoff must be non-negative");
  HochschildComplex C;
  C.kind_ = Kind::Hochschild;
  C.R_ = M.left_ptr();
  C.M_ = M;
  C.cutoff_ = cutoff;
  C.positive_only_ = positive_only;
  for (Index a = 1; a < C.R_->dim(); ++a) C.letters_.push_back(a);
  if (C.R_->truncated()) {
    int top = 0;
    for (Index a : C.letters_) top = std::max(top, C.R_->weight(a));
    if (cutoff > top)
      throw ScopeError("cutoff " + std::to_string(cutoff) +
                       " exceeds the word-length horizon of the algebra");
  }
  C.m_local_ = M.basis().local_positions();
  for (Index m = 0; m < M.dim(); ++m) C.m_by_degree_[M.degree(m)].push_back(m);
  return C;
}

HochschildComplex HochschildComplex::ext(const DGBimodule& N, const DGBimodule& M, int cutoff) {
  if (N.left_ptr() != M.left_ptr()) throw ValidationError("Ext needs two modules over the same algebra");
  if (N.truncated()) throw ScopeError("Ext source module must be finite");
  HochschildComplex C = hochschild(regular_bimodule(M.left_ptr()), cutoff);
  C.kind_ = Kind::Ext;
  C.M_ = M;
  C.N_ = N;
  C.m_local_ = M.basis().local_positions();
  C.m_by_degree_.clear();
  for (Index m = 0; m < M.dim(); ++m) C.m_by_degree_[M.degree(m)].push_back(m);
  return C;
}

int HochschildComplex::input_degree(Index i) const { return N_ ? N_->degree(i) : 0; }

Index HochschildComplex::intern_slot(const std::vector<Index>& word, Index input) const {
  auto key = std::make_pair(word, input);
  auto it = slot_lookup_.find(key);
  if (it != slot_lookup_.end()) return it->second;
  BarSlot s;
  s.word = word;
  s.input = input;
  s.shift = input_degree(input);
  for (Index a : word) {
    s.weight += R_->weight(a);
    s.shift += letter_shift(a);
  }
  slots_.push_back(std::move(s));
  slot_lookup_.emplace(std::move(key), slots_.size() - 1);
  return slots_.size() - 1;
}

std::optional<Index> HochschildComplex::slot_index(const std::vector<Index>& word, Index input) const {
  auto it = slot_lookup_.find(std::make_pair(word, input));
  if (it == slot_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<Index> HochschildComplex::slots_in_degree(int n) const {
  const DGAlgebra& R = *R_;
  std::vector<Index> inputs;
  if (N_) {
    for (Index i = 0; i < N_->dim(); ++i) inputs.push_back(i);
  } else {
    inputs.push_back(0);
  }
  int cmin = 0, cmax = 0;
  bool first = true;
  for (Index a : letters_) {
    int c = letter_shift(a);
    cmin = first ? c : std::min(cmin, c);
    cmax = first ? c : std::max(cmax, c);
    first = false;
  }
  const bool prune = !M_.truncated();
  DegreeWindow ms = basis_support(M_.basis());
  int imin = 0, imax = 0;
  if (N_ && N_->dim() > 0) {
    DegreeWindow ns = N_->basis().support();
    imin = ns.lo;
    imax = ns.hi;
  }
  const DegreeWindow complete = M_.complete();
  std::vector<Index> out;
  std::vector<Index> word;
  std::function<void(int, int)> dfs = [&](int weight, int shift) {
    if (!(positive_only_ && word.empty())) {
      for (Index i : inputs) {
        int t = n + shift + input_degree(i);
        if (!complete.contains(t))
          throw ScopeError("coefficients are truncated in degree " + std::to_string(t) +
                           ", needed for total degree " + std::to_string(n) +
                           "; raise the horizon or lower the cutoff");
        if (m_by_degree_.count(t)) out.push_back(intern_slot(word, i));
      }
    }
    for (Index a : letters_) {
      int w = weight + R.weight(a);
      if (w > cutoff_) continue;
      int s = shift + letter_shift(a);
      if (prune && !ms.empty()) {
        // Remaining letters move the shift monotonically when all letter shifts share a sign.
        if (cmin >= 0 && n + s + imin > ms.hi) continue;
        if (cmax <= 0 && n + s + imax < ms.lo) continue;
      }
      word.push_back(a);
      dfs(w, s);
      word.pop_back();
    }
  };
  if (!ms.empty() || M_.truncated()) dfs(0, 0);
  return out;
}

const std::vector<HochschildComplex::Column>& HochschildComplex::basis(int n) const {
  auto it = basis_.find(n);
  if (it != basis_.end()) return it->second;
  std::vector<Column> cols;
  std::map<std::pair<Index, Index>, Index> idx;
  for (Index s : slots_in_degree(n)) {
    int t = n + slots_[s].shift;
    for (Index m : m_by_degree_.at(t)) {
      idx.emplace(std::make_pair(s, m), cols.size());
      cols.push_back({s, m});
    }
  }
  index_.emplace(n, std::move(idx));
  return basis_.emplace(n, std::move(cols)).first->second;
}

std::optional<Index> HochschildComplex::index_of(int n, Index slot, Index output) const {
  basis(n);
  const auto& idx = index_.at(n);
  auto it = idx.find(std::make_pair(slot, output));
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

namespace {

// Terms of d(1[a1|…|ak] n) in the two-sided bar construction, with
// ε_i = Σ_{j<i}(|a_j| - 1).
std::vector<BarTerm> bar_differential(const DGAlgebra& R, const std::vector<Index>& v, Index input,
                                      const DGBimodule* N) {
  const Field& F = R.field();
  const Index k = v.size();
  std::vector<int> eps(k + 2, 0);
  for (Index i = 1; i <= k; ++i) eps[i + 1] = eps[i] + R.degree(v[i - 1]) - 1;
  std::vector<BarTerm> out;
  const SparseVec in = unit_vector(input);
  for (Index i = 1; i <= k; ++i) {
    for (const auto& [b, beta] : R.d(v[i - 1])) {
      if (b == 0) continue;
      auto u = v;
      u[i - 1] = b;
      out.push_back({0, std::move(u), in, 0, F.neg(F.mul(F.sign(eps[i]), beta))});
    }
  }
  if (N) {
    SparseVec dn = N->d(input);
    if (!dn.empty()) out.push_back({0, v, dn, 0, F.sign(eps[k + 1])});
  }
  if (k == 0) return out;
  out.push_back({v[0], std::vector<Index>(v.begin() + 1, v.end()), in, 0, Scalar(1)});
  for (Index i = 2; i <= k; ++i) {
    for (const auto& [b, beta] : R.product(v[i - 2], v[i - 1])) {
      if (b == 0) continue;
      std::vector<Index> u(v.begin(), v.begin() + (i - 2));
      u.push_back(b);
      u.insert(u.end(), v.begin() + i, v.end());
      out.push_back({0, std::move(u), in, 0, F.mul(F.sign(eps[i]), beta)});
    }
  }
  std::vector<Index> front(v.begin(), v.end() - 1);
  Scalar c = F.neg(F.sign(eps[k]));
  if (N) {
    SparseVec an = N->left(v[k - 1], input);
    if (!an.empty()) out.push_back({0, front, an, 0, c});
  } else {
    out.push_back({0, front, in, v[k - 1], c});
  }
  return out;
}

}  // namespace

const Matrix& HochschildComplex::differential(int n) const {
  auto it = d_.find(n);
  if (it != d_.end()) return it->second;
  const Field& F = R_->field();
  const auto& src = basis(n);
  const auto& tgt = basis(n + 1);
  std::vector<std::vector<std::pair<Index, Scalar>>> cols(src.size());
  try {
    // Internal differential of M.
    for (Index j = 0; j < src.size(); ++j) {
      for (const auto& [m2, x] : M_.d(src[j].output)) {
        auto row = index_of(n + 1, src[j].slot, m2);
        if (!row) throw std::logic_error("internal differential left the cochain basis");
        cols[j].emplace_back(*row, x);
      }
    }
    // −(−1)^n f̃(d_B(1[v]n)), with f̃(r[u]n' r') = (−1)^{|r| n} r·f(u⊗n')·r'.
    const Scalar outer = F.neg(F.sign(n));
    std::vector<Index> tgt_slots;
    for (const auto& c : tgt)
      if (tgt_slots.empty() || tgt_slots.back() != c.slot) tgt_slots.push_back(c.slot);
    for (Index ts : tgt_slots) {
      const BarSlot target = slots_[ts];
      auto terms = bar_differential(*R_, target.word, target.input, N_ ? &*N_ : nullptr);
      for (const auto& term : terms) {
        for (const auto& [i, alpha] : term.input) {
          if (positive_only_ && term.word.empty()) continue;
          auto ss = slot_index(term.word, i);
          if (!ss) continue;
          int t = n + slots_[*ss].shift;
          auto mit = m_by_degree_.find(t);
          if (mit == m_by_degree_.end()) continue;
          Scalar c = F.mul(F.mul(outer, term.coeff), alpha);
          if (term.left != 0) c = F.mul(c, F.sign(R_->degree(term.left) * n));
          for (Index m : mit->second) {
            auto col = index_of(n, *ss, m);
            if (!col) continue;
            SparseVec w = unit_vector(m);
            if (term.left != 0) w = M_.act_left(unit_vector(term.left), w);
            if (term.right != 0) w = M_.act_right(w, unit_vector(term.right));
            for (const auto& [m2, y] : w) {
              auto row = index_of(n + 1, ts, m2);
              if (!row) throw std::logic_error("bar differential left the cochain basis");
              cols[*col].emplace_back(*row, F.mul(c, y));
            }
          }
        }
      }
    }
  } catch (const HorizonExceeded& e) {
    throw ScopeError(std::string("truncation horizon too small: ") + e.what());
  }
  Matrix m(tgt.size(), src.size());
  for (Index j = 0; j < src.size(); ++j) m.columns[j] = collect(F, std::move(cols[j]));
  return d_.emplace(n, std::move(m)).first->second;
}

HomologyGroup HochschildComplex::cohomology(int n) const {
  return HomologyGroup(R_->field(), n, differential(n - 1), differential(n));
}

std::optional<int> HochschildComplex::needed_weight(int n) const {
  if (M_.truncated()) return std::nullopt;
  if (letters_.empty()) return 0;
  DegreeWindow ms = M_.basis().support();
  if (ms.empty()) return 0;
  int cmin = letter_shift(letters_.front()), cmax = cmin;
  for (Index a : letters_) {
    cmin = std::min(cmin, letter_shift(a));
    cmax = std::max(cmax, letter_shift(a));
  }
  int imin = 0, imax = 0;
  if (N_ && N_->dim() > 0) {
    imin = N_->basis().support().lo;
    imax = N_->basis().support().hi;
  }
  // Cochain on slot v with output m: |m| = n + shift(v) + |input|.
  const bool up = cmin >= 1, down = cmax <= -1;
  if (!up && !down) return std::nullopt;
  const int hi_shift = ms.hi - n - imin;  // largest admissible Σ shifts
  const int lo_shift = ms.lo - n - imax;  // smallest admissible Σ shifts
  if (R_->truncated()) {
    DegreeWindow c = R_->complete();
    if (up && c.hi - 1 <= hi_shift) return std::nullopt;
    if (down && c.lo - 1 >= lo_shift) return std::nullopt;
  }
  int best = 0;
  std::function<void(int, int)> dfs = [&](int weight, int shift) {
    best = std::max(best, weight);
    for (Index a : letters_) {
      int s = shift + letter_shift(a);
      if (up && s > hi_shift) continue;
      if (down && s < lo_shift) continue;
      dfs(weight + R_->weight(a), s);
    }
  };
  dfs(0, 0);
  return best;
}

bool HochschildComplex::exact_in(int n) const {
  for (int k = n - 1; k <= n + 1; ++k) {
    auto w = needed_weight(k);
    if (!w || *w > cutoff_) return false;
  }
  return true;
}

SparseVec HochschildComplex::length_zero_part(int n, const SparseVec& cochain) const {
  const auto& cols = basis(n);
  SparseVec out;
  for (const auto& [j, x] : cochain) {
    const Column& c = cols[j];
    if (slots_[c.slot].word.empty()) out.emplace_back(m_local_[c.output], x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseVec HochschildComplex::from_length_zero(int n, const SparseVec& m) const {
  basis(n);
  auto s = slot_index({}, 0);
  if (!s) return {};
  const auto& ms = m_by_degree_.at(n);
  std::vector<std::pair<Index, Scalar>> out;
  for (const auto& [i, x] : m) out.emplace_back(*index_of(n, *s, ms.at(i)), x);
  return collect(R_->field(), out);
}

ChainComplex HochschildComplex::assemble(DegreeWindow w) const {
  DegreeWindow r{w.lo - 1, w.hi + 1};
  std::map<int, Index> dims;
  std::map<int, Matrix> ds;
  for (int n = r.lo; n <= r.hi; ++n) dims[n] = dim(n);
  for (int n = r.lo; n < r.hi; ++n) ds.emplace(n, differential(n));
  return ChainComplex(R_->field(), r, std::move(dims), std::move(ds), false);
}

int free_algebra_horizon(const std::vector<int>& gens, DegreeWindow window, int cutoff) {
  if (gens.empty()) return 0;
  int gmin = *std::min_element(gens.begin(), gens.end());
  int gmax = *std::max_element(gens.begin(), gens.end());
  const int top = cutoff + 2;
  auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
  if (gmin > 0) {
    // output degree t <= n + 1 + Σ(|a_i| - 1) <= n + 1 + gmax·top
    int need = window.hi + 1 + gmax * top;
    return std::max(top, ceil_div(need + 1, gmin));
  }
  if (gmax < 0) {
    int need = -(window.lo - 1 + (gmin - 1) * top);
    return std::max(top, ceil_div(need + 1, -gmax));
  }
  throw ScopeError("free algebra generators must all be positive or all negative");
}

}  // namespace dga
