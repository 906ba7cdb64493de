#include "doctest.h"
#include "oracles.hpp"

#include "jsd/decomp.hpp"
#include "jsd/purity.hpp"
#include "jsd/random.hpp"

using namespace jsd;

namespace {
const BipartiteState s00 = basis_state(2, 2, 0, 0);
const BipartiteState s11 = basis_state(2, 2, 1, 1);

Complex tr_prod(const CMatrix& x, const CMatrix& y) { return (x * y).trace(); }
}  // namespace

TEST_CASE("check_purity_equal") {
  auto r = check_purity_equal(oracle::bell());
  CHECK(std::abs(r.lhs - 0.5) < 1e-15);
  CHECK(std::abs(r.rhs - 0.5) < 1e-15);
  CHECK(r.holds);
  r = check_purity_equal(s00);
  CHECK(std::abs(r.lhs - 1.0) < 1e-15);
  CHECK(std::abs(r.rhs - 1.0) < 1e-15);

  const auto psi = haar_random_state(5, 5, 55);
  r = check_purity_equal(psi);
  const RVector lam = schmidt(psi).lambdas;
  CHECK(std::abs(r.lhs.real() - lam.squaredNorm()) < 1e-10);
  REQUIRE(r.third_route);
  CHECK(std::abs(*r.third_route - lam.squaredNorm()) < 1e-12);
  CHECK(r.abs_gap < 1e-10);
}

TEST_CASE("reduction_square_identity") {
  auto r = reduction_square_identity(oracle::bell(), oracle::bell());
  CHECK(std::abs(r.lhs - 0.5) < 1e-15);
  CHECK(std::abs(r.rhs - 0.5) < 1e-15);
  r = reduction_square_identity(oracle::bell(), s00);
  CHECK(std::abs(r.lhs - 0.5) < 1e-15);
  CHECK(std::abs(r.rhs - 0.5) < 1e-15);

  double worst = 0.0;
  for (Eigen::Index d = 2; d <= 6; ++d)
    for (std::uint64_t i = 0; i < 100; ++i) {
      const auto psi = haar_random_state(d, d + 1, derive_seed(d, 2 * i));
      const auto phi = haar_random_state(d, d + 1, derive_seed(d, 2 * i + 1));
      const auto rep = reduction_square_identity(psi, phi);
      const CMatrix a = oracle::tr_a(psi, phi), b = oracle::tr_b(psi, phi);
      CHECK(std::abs(rep.lhs - tr_prod(a, a)) < 1e-12);
      CHECK(std::abs(rep.rhs - tr_prod(b, b)) < 1e-12);
      worst = std::max(worst, std::abs(tr_prod(a, a) - tr_prod(b, b)));
      CHECK(rep.holds);
    }
  CHECK(worst < 1e-10);
  CHECK_THROWS_AS(reduction_square_identity(s00, basis_state(2, 3, 0, 0)), Error);
}

TEST_CASE("cross_purity_identity") {
  const auto psi = haar_random_state(3, 3, 8);
  auto r = cross_purity_identity(psi, psi);
  const double p = check_purity_equal(psi).lhs.real();
  CHECK(std::abs(r.lhs - p) < 1e-12);
  CHECK(std::abs(r.rhs - p) < 1e-12);
  CHECK(std::abs(*r.third_route - p) < 1e-12);

  r = cross_purity_identity(oracle::bell(), s00);
  CHECK(std::abs(r.lhs - 0.5) < 1e-12);
  CHECK(std::abs(r.rhs - 0.5) < 1e-12);
  CHECK(std::abs(*r.third_route - 0.5) < 1e-12);

  r = cross_purity_identity(s00, s11);
  CHECK(std::abs(r.lhs) == 0.0);
  CHECK(std::abs(r.rhs) == 0.0);
  CHECK(*r.third_route == 0.0);

  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto a = haar_random_state(3, 4, derive_seed(9, 2 * i));
    const auto b = haar_random_state(3, 4, derive_seed(9, 2 * i + 1));
    const auto rep = cross_purity_identity(a, b);
    const Complex brute_l = tr_prod(oracle::tr_b(a, b), oracle::tr_b(b, a));
    const Complex brute_r = tr_prod(oracle::tr_a(a, a), oracle::tr_a(b, b));
    CHECK(std::abs(rep.lhs - brute_l) < 1e-12);
    CHECK(std::abs(rep.rhs - brute_r) < 1e-12);
    CHECK(std::abs(brute_l - brute_r) < 1e-9);
    CHECK(std::abs(*rep.third_route - brute_l) < 1e-9);
    CHECK(rep.lhs.real() >= -1e-12);
    CHECK(rep.rhs.real() >= -1e-12);
  }
}

TEST_CASE("four_state_identity") {
  const auto psi = haar_random_state(3, 2, 1), phi = haar_random_state(3, 2, 2);
  const auto paired = four_state_identity(psi, phi, psi, phi);
  CHECK(std::abs(paired.lhs.imag()) < 1e-12);
  // (chi, zeta) = (psi, phi) pairs the same way as the reduction-square identity on the A side
  CHECK(std::abs(paired.lhs - tr_prod(oracle::tr_a(psi, psi), oracle::tr_a(phi, phi))) < 1e-12);

  const auto all = four_state_identity(psi, psi, psi, psi);
  const double p = check_purity_equal(psi).lhs.real();
  CHECK(std::abs(all.lhs - p) < 1e-12);
  CHECK(std::abs(all.rhs - p) < 1e-12);

  double worst = 0.0;
  for (Eigen::Index d = 2; d <= 4; ++d)
    for (std::uint64_t i = 0; i < 100; ++i) {
      BipartiteState s[4] = {haar_random_state(d, d, derive_seed(40 + d, 4 * i)),
                             haar_random_state(d, d, derive_seed(40 + d, 4 * i + 1)),
                             haar_random_state(d, d, derive_seed(40 + d, 4 * i + 2)),
                             haar_random_state(d, d, derive_seed(40 + d, 4 * i + 3))};
      const auto rep = four_state_identity(s[0], s[1], s[2], s[3]);
      const Complex l = tr_prod(oracle::tr_a(s[0], s[2]), oracle::tr_a(s[1], s[3]));
      const Complex r = tr_prod(oracle::tr_b(s[0], s[3]), oracle::tr_b(s[1], s[2]));
      CHECK(std::abs(rep.lhs - l) < 1e-12);
      CHECK(std::abs(rep.rhs - r) < 1e-12);
      worst = std::max(worst, std::abs(l - r));
    }
  CHECK(worst < 1e-10);
  CHECK_THROWS_AS(four_state_identity(psi, phi, psi, haar_random_state(2, 3, 0)), Error);
}

TEST_CASE("trace_of_product") {
  const CMatrix x = CMatrix::Random(3, 4), y = CMatrix::Random(4, 3);
  CHECK(std::abs(trace_of_product(x, y) - (x * y).trace()) < 1e-13);
}
