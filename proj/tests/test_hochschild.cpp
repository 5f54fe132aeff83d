#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "dga/hochschild.hpp"
#include "oracles.hpp"
#include "suites.hpp"

using namespace dga;

namespace {

std::shared_ptr<const DGAlgebra> share(DGAlgebra A) { return std::make_shared<const DGAlgebra>(std::move(A)); }

oracles::Dense action_matrix(const DGBimodule& M, Index a, bool left) {
  oracles::Dense out(M.dim(), std::vector<Scalar>(M.dim()));
  for (Index j = 0; j < M.dim(); ++j)
    for (const auto& [i, x] : left ? M.left(a, j) : M.right(j, a)) out[i][j] = x;
  return out;
}

// k as a left module over R (augmentation), right module over k.
DGBimodule ground_module(std::shared_ptr<const DGAlgebra> R) {
  const Field& F = R->field();
  auto k = share(ground_algebra(F));
  StructureTable left(R->dim(), 1), right(1, 1);
  left.at(0, 0) = unit_vector(0);
  for (Index a = 1; a < R->dim(); ++a) left.at(a, 0) = SparseVec{};
  right.at(0, 0) = unit_vector(0);
  return DGBimodule(R, k, GradedBasis{{0}, {"1"}}, {{}}, left, right);
}

void check_d_squared(const HochschildComplex& C, int lo, int hi) {
  const Field& F = C.algebra().field();
  for (int n = lo; n < hi; ++n)
    CHECK_MESSAGE(compose(F, C.differential(n + 1), C.differential(n)).is_zero(), "degree " << n);
}

DGBimodule twisted_dual_numbers(const Field& F) {
  auto R = share(dual_numbers(F));
  Matrix flip = Matrix::identity(2);
  flip.columns[1] = SparseVec{{1, F.from_int(-1)}};
  AlgebraMap phi{R, R, flip};
  return restrict_bimodule(phi, regular_bimodule(R), false);
}

}  // namespace

TEST_CASE("dual numbers against the periodic resolution") {
  for (Field F : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
    auto R = share(dual_numbers(F));
    for (const DGBimodule& M : {regular_bimodule(R), twisted_dual_numbers(F)}) {
      auto expected = oracles::dual_numbers_hh(F, action_matrix(M, 1, true), action_matrix(M, 1, false), 4);
      for (int n = 0; n <= 4; ++n) {
        CohomologyGroup g = hh_group(M, n);
        CHECK_MESSAGE(g.dim == expected[n], F.name() << " n=" << n);
        CHECK(g.status == Status::Exact);
      }
    }
  }
  // Known values for the regular bimodule.
  auto Rq = share(dual_numbers(Field::rationals()));
  auto R2 = share(dual_numbers(Field::prime(2)));
  for (int n = 0; n <= 4; ++n) {
    CHECK(hh_group(regular_bimodule(Rq), n).dim == (n == 0 ? 2u : 1u));
    CHECK(hh_group(regular_bimodule(R2), n).dim == 2u);
  }
}

TEST_CASE("ordinary algebras have no negative Hochschild cohomology") {
  for (Field F : {Field::rationals(), Field::prime(3)}) {
    for (DGAlgebra A : {dual_numbers(F), matrix_algebra(F, 2), ground_algebra(F)}) {
      auto R = share(A);
      for (int n = -3; n < 0; ++n) CHECK(hh_group(regular_bimodule(R), n).dim == 0u);
    }
  }
}

TEST_CASE("Ext over dual numbers from the free resolution") {
  for (Field F : {Field::rationals(), Field::prime(2)}) {
    auto R = share(dual_numbers(F));
    DGBimodule k = ground_module(R);
    auto expected = oracles::dual_numbers_ext_kk(4);
    for (int n = 0; n <= 4; ++n) {
      CohomologyGroup g = ext_group(k, k, n);
      CHECK_MESSAGE(g.dim == expected[n], F.name() << " n=" << n);
      CHECK(g.status == Status::Exact);
    }
    check_d_squared(HochschildComplex::ext(k, k, 6), -1, 5);
  }
}

TEST_CASE("free algebra on one generator against the short resolution") {
  const DegreeWindow window{-4, 4};
  for (Field F : {Field::rationals(), Field::prime(2)}) {
    for (int g : {1, 2, 3}) {
      int H = free_algebra_horizon({g}, window, 8);
      auto R = share(free_algebra(F, {g}, H));
      DGBimodule M = regular_bimodule(R);
      for (int n = window.lo; n <= window.hi; ++n) {
        CohomologyGroup grp = hh_group(M, n);
        CHECK_MESSAGE(grp.dim == oracles::free_one_generator_hh(F, g, 1, n),
                      F.name() << " |x|=" << g << " n=" << n);
        CHECK(grp.status != Status::Unstable);
      }
    }
  }
}

TEST_CASE("degree-2 generator: dimension one from -1 upwards") {
  auto R = share(free_algebra(Field::rationals(), {2}, free_algebra_horizon({2}, {-4, 4}, 8)));
  for (int n = -4; n <= 4; ++n) CHECK(hh_group(regular_bimodule(R), n).dim == (n >= -1 ? 1u : 0u));
}

TEST_CASE("cochain differential squares to zero") {
  std::mt19937 rng(7);
  for (Field F : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto R = share(suites::random_algebra(F, rng));
      DGBimodule M = regular_bimodule(R);
      check_d_squared(HochschildComplex::hochschild(M, 4), -4, 4);
      check_d_squared(HochschildComplex::hochschild(M, 4, true), -4, 4);
      check_d_squared(HochschildComplex::hochschild(suspend_bimodule(M, 1), 4), -4, 4);
    }
    auto E = share(suites::acyclic_nonstrict(F));
    check_d_squared(HochschildComplex::hochschild(regular_bimodule(E), 5), -5, 5);
    auto T = share(free_algebra(F, {2, 3}, free_algebra_horizon({2, 3}, {-1, 1}, 2)));
    check_d_squared(HochschildComplex::hochschild(regular_bimodule(T), 2), -1, 1);
  }
}

TEST_CASE("Hochschild cohomology is additive in the coefficients") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    auto R = share(suites::pick_small(Field::prime(3), rng));
    DGBimodule M = regular_bimodule(R), N = suspend_bimodule(M, 1);
    DGBimodule S = bimodule_direct_sum(M, N);
    for (int n = -2; n <= 2; ++n) {
      CohomologyOptions opt{5, true};
      CHECK(hh_group(S, n, opt).dim == hh_group(M, n, opt).dim + hh_group(N, n, opt).dim);
    }
  }
}

TEST_CASE("ground field: HH is the cohomology of the coefficients") {
  auto k = share(ground_algebra(Field::rationals()));
  auto R = share(suites::suspended_class(Field::rationals(), 1));
  DGBimodule M = regular_bimodule(k);
  for (int n = -2; n <= 2; ++n) {
    CohomologyGroup g = hh_group(M, n);
    CHECK(g.dim == (n == 0 ? 1u : 0u));
    CHECK(g.status == Status::Exact);
  }
}

TEST_CASE("contractible coefficients give zero") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    auto R = share(suites::pick_small(Field::rationals(), rng));
    DGBimodule C = contractible_cone(regular_bimodule(R));
    for (int n = -2; n <= 2; ++n) CHECK(hh_group(C, n, {5, true}).dim == 0u);
  }
}

TEST_CASE("stabilized values persist at a larger cutoff") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    auto R = share(suites::random_algebra(Field::prime(2), rng));
    DGBimodule M = regular_bimodule(R);
    for (int n = -2; n <= 2; ++n) {
      CohomologyGroup g = hh_group(M, n, {5, true});
      if (g.status != Status::Stabilized) continue;
      CHECK(hh_group(M, n, {7, false}).dim == g.dim);
    }
  }
}

TEST_CASE("Der and HH fit into a long exact sequence") {
  std::mt19937 rng(13);
  for (Field F : {Field::rationals(), Field::prime(2)}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto R = share(suites::pick_small(F, rng));
      LESReport rep = der_hh_les(regular_bimodule(R), {-2, 2}, {5, true});
      CHECK(rep.all_determined_exact());
      CHECK(rep.count(Verdict::Exact) > 0);
    }
  }
}

TEST_CASE("HH^0 of dual numbers and of 2x2 matrices") {
  auto R2 = share(dual_numbers(Field::prime(2)));
  HH0Ring ring = hh0_ring(regular_bimodule(R2));
  CHECK(ring.cup_closed);
  CHECK(ring.group.dim == 2u);
  CHECK(hh0_units(ring).size() == 2u);

  auto M3 = share(matrix_algebra(Field::prime(3), 2));
  HH0Ring center = hh0_ring(regular_bimodule(M3));
  CHECK(center.group.dim == 1u);
  CHECK(center.group.status == Status::Exact);
  CHECK(hh0_units(center).size() == 2u);
  CHECK(center.multiply(center.unit, center.unit) == center.unit);
}

TEST_CASE("bar construction resolves its module") {
  Field F = Field::rationals();
  std::vector<DGBimodule> modules;
  auto Rd = share(dual_numbers(F));
  modules.push_back(regular_bimodule(Rd));
  modules.push_back(ground_module(Rd));
  auto Rs = share(suites::suspended_class(F, 1));
  modules.push_back(regular_bimodule(Rs));
  modules.push_back(ground_module(Rs));
  auto Rn = share(suites::suspended_class(F, -2));
  modules.push_back(ground_module(Rn));
  for (const auto& S : modules) {
    BarComplex B = bar_complex(S, 4, {-4, 2});
    for (int n = B.complex.range().lo; n + 1 < B.complex.range().hi; ++n)
      CHECK(compose(F, B.complex.d(n + 1), B.complex.d(n)).is_zero());
    BarCheck check = bar_augmentation_check(S, {-4, 2}, {6, true});
    CHECK(check.quasi_iso);
    CHECK(check.status != Status::Unstable);
  }
}

TEST_CASE("truncated bar complexes carry a top-length artifact that does not survive") {
  auto R = share(suites::suspended_class(Field::rationals(), 1));
  DGBimodule k = ground_module(R);
  BarComplex B = bar_complex(k, 4, {-4, 2});
  CHECK(homology_at(cone(B.augmentation), -1).dim() + homology_at(cone(B.augmentation), 0).dim() > 0);
  BarCheck check = bar_augmentation_check(k, {-4, 2}, {4, true});
  CHECK(check.quasi_iso);
  CHECK(check.status == Status::Stabilized);
}
