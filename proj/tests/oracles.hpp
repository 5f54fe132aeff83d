#pragma once

// Independent small-resolution oracles. They use plain dense arithmetic over the
// field and share nothing with the bar-construction code beyond Field.

#include <vector>

#include "dga/field.hpp"

namespace oracles {

using dga::Field;
using dga::Scalar;
using Dense = std::vector<std::vector<Scalar>>;  // row-major

inline std::size_t dense_rank(const Field& F, Dense a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Scalar inv = F.inv(a[r][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Scalar f = F.mul(a[i][c], inv);
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
    }
    ++r;
  }
  return r;
}

/// HH^n(k[ε]/ε², M) for a degree-0 bimodule M given by the matrices of left and
/// right multiplication by ε, from the 2-periodic resolution
/// … → R⊗R → R⊗R → R with maps ε⊗1 − 1⊗ε and ε⊗1 + 1⊗ε alternating.
/// Hom into M turns these into L − R and L + R.
inline std::vector<std::size_t> dual_numbers_hh(const Field& F, const Dense& L, const Dense& Rm, int nmax) {
  const std::size_t d = L.size();
  Dense minus(d, std::vector<Scalar>(d)), plus(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      minus[i][j] = F.sub(L[i][j], Rm[i][j]);
      plus[i][j] = F.add(L[i][j], Rm[i][j]);
    }
  std::size_t rk_minus = dense_rank(F, minus), rk_plus = dense_rank(F, plus);
  std::vector<std::size_t> out;
  for (int n = 0; n <= nmax; ++n) {
    std::size_t out_rank = (n % 2 == 0) ? rk_minus : rk_plus;
    std::size_t in_rank = n == 0 ? 0 : ((n - 1) % 2 == 0 ? rk_minus : rk_plus);
    out.push_back(d - out_rank - in_rank);
  }
  return out;
}

/// Ext^n_{k[ε]}(k, k) from the periodic free resolution … → R → R → k with maps ε·:
/// Hom_R(R, k) = k and every induced map is multiplication by ε on k, i.e. zero.
inline std::vector<std::size_t> dual_numbers_ext_kk(int nmax) {
  return std::vector<std::size_t>(nmax + 1, 1);
}

/// HH^n(k⟨x⟩, M) for M = k⟨x⟩^{⊕copies} (zero differential) from the resolution
/// 0 → R⊗kx⊗R → R⊗R → R → 0. Hom into M gives δ: M^n → M^{n+|x|},
/// δ(m) = x m − (−1)^{|x||m|} m x; HH^n = ker δ|_{M^n} ⊕ coker δ|_{M^{n−1}}.
inline std::size_t free_one_generator_hh(const Field& F, int x_degree, int copies, int n) {
  auto dim_M = [&](int t) -> std::size_t {
    if (t < 0 || t % x_degree != 0) return 0;
    return copies;
  };
  // On x^j (degree j|x|) the commutator is (1 − (−1)^{|x|·j|x|}) x^{j+1}.
  auto rank_delta = [&](int t) -> std::size_t {
    if (dim_M(t) == 0) return 0;
    int j = t / x_degree;
    Scalar c = F.sub(Scalar(1), F.sign(static_cast<long>(x_degree) * j * x_degree));
    return c == 0 ? 0 : copies;
  };
  std::size_t ker = dim_M(n) - rank_delta(n);
  std::size_t coker = dim_M(n - 1 + x_degree) - rank_delta(n - 1);
  return ker + coker;
}

}  // namespace oracles
