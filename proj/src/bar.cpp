#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "dga/hochschild.hpp"

namespace dga {

namespace {

struct BarElement {
  Index r;
  Index word;
  Index m;
};

struct BarWords {
  std::vector<std::vector<Index>> words;
  std::vector<int> shift;
  std::map<std::vector<Index>, Index> lookup;
};

BarWords enumerate_words(const DGAlgebra& R, int cutoff) {
  BarWords W;
  std::vector<Index> word;
  std::function<void(int, int)> dfs = [&](int weight, int shift) {
    W.lookup.emplace(word, W.words.size());
    W.words.push_back(word);
    W.shift.push_back(shift);
    for (Index a = 1; a < R.dim(); ++a) {
      if (weight + R.weight(a) > cutoff) continue;
      word.push_back(a);
      dfs(weight + R.weight(a), shift + R.degree(a) - 1);
      word.pop_back();
    }
  };
  dfs(0, 0);
  return W;
}

using BarKey = std::tuple<Index, std::vector<Index>, Index>;

struct KeyedBar {
  BarComplex bar;
  std::map<int, std::vector<BarKey>> keys;
};

KeyedBar build_bar(const DGBimodule& S, int cutoff, DegreeWindow window) {
  const DGAlgebra& R = S.left_algebra();
  const Field& F = R.field();
  if (S.truncated()) throw ScopeError("bar construction needs a finite coefficient module");
  BarWords W = enumerate_words(R, cutoff);
  const DegreeWindow range{window.lo - 1, window.hi + 2};
  if (R.truncated()) {
    for (Index a = 1; a < R.dim(); ++a)
      if (R.degree(a) < 1) throw ScopeError("truncated algebras need letters of positive degree");
    DegreeWindow ss = S.basis().support();
    if (!ss.empty() && range.hi - ss.lo > R.complete().hi)
      throw ScopeError("algebra horizon too small for the bar window");
  }
  // Basis per degree.
  std::map<int, std::vector<BarElement>> basis;
  std::map<int, std::map<std::tuple<Index, Index, Index>, Index>> index;
  for (int n = range.lo; n <= range.hi; ++n) {
    auto& b = basis[n];
    auto& idx = index[n];
    for (Index w = 0; w < W.words.size(); ++w)
      for (Index r = 0; r < R.dim(); ++r)
        for (Index m = 0; m < S.dim(); ++m)
          if (R.degree(r) + W.shift[w] + S.degree(m) == n) {
            idx.emplace(std::make_tuple(r, w, m), b.size());
            b.push_back({r, w, m});
          }
  }
  // d(r[a1|…|ak]m), ε_i = |r| + Σ_{j<i}(|a_j| - 1).
  std::map<int, Matrix> ds;
  try {
    for (int n = range.lo; n < range.hi; ++n) {
      const auto& src = basis[n];
      const auto& tgt_idx = index[n + 1];
      Matrix mat(basis[n + 1].size(), src.size());
      for (Index j = 0; j < src.size(); ++j) {
        const auto [r, w, m] = src[j];
        const auto& v = W.words[w];
        const Index k = v.size();
        std::vector<std::pair<Index, Scalar>> terms;
        auto put = [&](const SparseVec& rs, const std::vector<Index>& word, const SparseVec& ms,
                       const Scalar& c) {
          auto wit = W.lookup.find(word);
          if (wit == W.lookup.end()) return;  // beyond the weight cutoff cannot occur; guard
          for (const auto& [ri, x] : rs)
            for (const auto& [mi, y] : ms) {
              auto t = tgt_idx.find(std::make_tuple(ri, wit->second, mi));
              if (t == tgt_idx.end()) throw std::logic_error("bar differential left the basis");
              terms.emplace_back(t->second, F.mul(c, F.mul(x, y)));
            }
        };
        std::vector<int> eps(k + 2, 0);
        eps[1] = R.degree(r);
        for (Index i = 1; i <= k; ++i) eps[i + 1] = eps[i] + R.degree(v[i - 1]) - 1;
        const SparseVec ur = unit_vector(r), um = unit_vector(m);
        put(R.d(r), v, um, Scalar(1));
        for (Index i = 1; i <= k; ++i) {
          for (const auto& [b, beta] : R.d(v[i - 1])) {
            if (b == 0) continue;
            auto u = v;
            u[i - 1] = b;
            put(ur, u, um, F.neg(F.mul(F.sign(eps[i]), beta)));
          }
        }
        put(ur, v, S.d(m), F.sign(eps[k + 1]));
        if (k > 0) {
          put(R.product(r, v[0]), std::vector<Index>(v.begin() + 1, v.end()), um, F.sign(R.degree(r)));
          for (Index i = 2; i <= k; ++i) {
            for (const auto& [b, beta] : R.product(v[i - 2], v[i - 1])) {
              if (b == 0) continue;
              std::vector<Index> u(v.begin(), v.begin() + (i - 2));
              u.push_back(b);
              u.insert(u.end(), v.begin() + i, v.end());
              put(ur, u, um, F.mul(F.sign(eps[i]), beta));
            }
          }
          put(ur, std::vector<Index>(v.begin(), v.end() - 1), S.left(v[k - 1], m), F.neg(F.sign(eps[k])));
        }
        mat.columns[j] = collect(F, std::move(terms));
      }
      ds.emplace(n, std::move(mat));
    }
  } catch (const HorizonExceeded& e) {
    throw ScopeError(std::string("truncation horizon too small: ") + e.what());
  }
  std::map<int, Index> dims;
  for (int n = range.lo; n <= range.hi; ++n) dims[n] = basis[n].size();
  ChainComplex B(F, range, dims, std::move(ds), false);
  ChainComplex Sc = S.complex();
  GradedMap aug{B, Sc, 0, {}};
  auto local = S.basis().local_positions();
  for (int n = range.lo; n <= range.hi; ++n) {
    Matrix mat(Sc.dim(n), basis[n].size());
    for (Index j = 0; j < basis[n].size(); ++j) {
      const auto [r, w, m] = basis[n][j];
      if (!W.words[w].empty()) continue;
      SparseVec img;
      for (const auto& [mi, x] : S.left(r, m)) img.emplace_back(local[mi], x);
      std::sort(img.begin(), img.end());
      mat.columns[j] = img;
    }
    aug.components[n] = std::move(mat);
  }
  KeyedBar out{BarComplex{std::move(B), std::move(aug)}, {}};
  for (const auto& [n, elems] : basis) {
    auto& k = out.keys[n];
    for (const auto& e : elems) k.emplace_back(e.r, W.words[e.word], e.m);
  }
  return out;
}

// Inclusion cone(aug_small) → cone(aug_large) on degrees lo..hi.
GradedMap cone_inclusion(const KeyedBar& small, const ChainComplex& cs, const KeyedBar& large,
                         const ChainComplex& cl, int lo, int hi) {
  GradedMap f{cs, cl, 0, {}};
  for (int n = lo; n <= hi; ++n) {
    std::map<BarKey, Index> pos;
    const auto& lk = large.keys.at(n + 1);
    for (Index i = 0; i < lk.size(); ++i) pos.emplace(lk[i], i);
    const auto& sk = small.keys.at(n + 1);
    Matrix m(cl.dim(n), cs.dim(n));
    for (Index j = 0; j < sk.size(); ++j) m.columns[j] = unit_vector(pos.at(sk[j]));
    for (Index j = sk.size(); j < cs.dim(n); ++j) m.columns[j] = unit_vector(j - sk.size() + lk.size());
    f.components[n] = std::move(m);
  }
  return f;
}

}  // namespace

BarComplex bar_complex(const DGBimodule& S, int cutoff, DegreeWindow window) {
  return build_bar(S, cutoff, window).bar;
}

BarCheck bar_augmentation_check(const DGBimodule& S, DegreeWindow window, const CohomologyOptions& opt) {
  auto build = [&](int cutoff) {
    KeyedBar b = build_bar(S, cutoff, window);
    if (!is_chain_map(b.bar.augmentation)) throw std::logic_error("bar augmentation is not a chain map");
    return b;
  };
  // Classes of cone(aug) at cutoff N that survive into cutoff N+1; the remaining ones
  // live on the top bar length and are killed once longer words appear.
  auto surviving = [&](const KeyedBar& a, const KeyedBar& b) {
    ChainComplex ca = cone(a.bar.augmentation), cb = cone(b.bar.augmentation);
    GradedMap inc = cone_inclusion(a, ca, b, cb, window.lo, window.hi);
    std::map<int, Index> dims;
    for (int n = window.lo; n <= window.hi; ++n)
      dims[n] = rank(S.field(), induced_on_homology(inc, homology_at(ca, n), homology_at(cb, n)));
    return dims;
  };
  BarCheck out;
  out.window = window;
  out.cutoff = opt.cutoff;
  KeyedBar b0 = build(opt.cutoff), b1 = build(opt.cutoff + 1);
  out.cone_dims = surviving(b0, b1);
  out.quasi_iso = std::all_of(out.cone_dims.begin(), out.cone_dims.end(),
                              [](const auto& e) { return e.second == 0; });
  if (S.left_algebra().dim() == 1) {
    out.status = Status::Exact;
  } else if (opt.stabilize) {
    out.status = surviving(b1, build(opt.cutoff + 2)) == out.cone_dims ? Status::Stabilized : Status::Unstable;
  }
  return out;
}

}  // namespace dga
