#pragma once

// Small named algebras shared by the test binaries.

#include <random>

#include "dga/algebra.hpp"

namespace suites {

using namespace dga;

inline StructureTable unit_table(Index n) {
  StructureTable t(n, n);
  for (Index i = 0; i < n; ++i) {
    t.at(0, i) = unit_vector(i);
    t.at(i, 0) = unit_vector(i);
  }
  return t;
}

/// k ⊕ k·u with |u| = degree, u² = 0, d = 0.
inline DGAlgebra suspended_class(Field F, int degree) {
  return validate_algebra(F, GradedBasis{{0, degree}, {"1", "u"}}, {{}, {}}, unit_table(2));
}

/// span(1, a, b), |a| = -1, |b| = 0, da = b, products of a, b zero. Acyclic apart from
/// the unit and not strict.
inline DGAlgebra acyclic_nonstrict(Field F) {
  return validate_algebra(F, GradedBasis{{0, -1, 0}, {"1", "a", "b"}}, {{}, unit_vector(2), {}},
                          unit_table(3));
}

/// Unitriangular change of basis mixing elements of equal degree.
inline Matrix random_unitriangular(const DGAlgebra& A, std::mt19937& rng) {
  const Field& F = A.field();
  Matrix P = Matrix::identity(A.dim());
  long range = F.is_prime_field() ? F.characteristic() : 5;
  for (Index j = 1; j < A.dim(); ++j) {
    for (Index i = 0; i < j; ++i) {
      if (A.degree(i) != A.degree(j) || rng() % 2) continue;
      long c = static_cast<long>(rng() % range) - (F.is_prime_field() ? 0 : 2);
      if (c != 0) P.columns[j] = axpy(F, P.columns[j], F.from_int(c), unit_vector(i));
    }
  }
  return P;
}

inline DGAlgebra pick_small(Field F, std::mt19937& rng) {
  switch (rng() % 5) {
    case 0: return dual_numbers(F);
    case 1: return dual_numbers(F, -1);
    case 2: return suspended_class(F, 1);
    case 3: return acyclic_nonstrict(F);
    default: return suspended_class(F, -2);
  }
}

/// Random algebra: basis change of a tensor product or of a square-zero extension.
inline DGAlgebra random_algebra(Field F, std::mt19937& rng) {
  DGAlgebra base;
  if (rng() % 2) {
    base = tensor_algebras(pick_small(F, rng), pick_small(F, rng));
  } else {
    auto R = std::make_shared<const DGAlgebra>(pick_small(F, rng));
    int shift = static_cast<int>(rng() % 3) - 1;
    base = square_zero_extension(*R, suspend_bimodule(regular_bimodule(R), shift));
  }
  return change_basis(base, random_unitriangular(base, rng));
}

}  // namespace suites
