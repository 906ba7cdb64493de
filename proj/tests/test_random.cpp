#include "doctest.h"
#include "oracles.hpp"

#include <set>

#include "jsd/random.hpp"

using namespace jsd;

TEST_CASE("haar_random_state determinism and normalization") {
  CHECK(haar_random_state(2, 2, 42) == haar_random_state(2, 2, 42));
  CHECK(!(haar_random_state(2, 2, 42) == haar_random_state(2, 2, 43)));
  for (std::uint64_t s = 0; s < 50; ++s) CHECK(std::abs(haar_random_state(3, 3, s).flat().norm() - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(haar_random_state(1, 1, 9)(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("Haar average purity is (dA+dB)/(dA dB+1)") {
  double sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto s = haar_random_state(2, 2, derive_seed(2024, static_cast<std::uint64_t>(i)));
    const CMatrix rho = oracle::tr_b(s, s);
    sum += (rho * rho).trace().real();
  }
  CHECK(std::abs(sum / n - 0.8) < 0.02);
}

TEST_CASE("haar_random_unitary") {
  const CMatrix u1 = haar_random_unitary(1, 3);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-15);
  for (Eigen::Index d : {1, 2, 3, 5, 8}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const CMatrix u = haar_random_unitary(d, s);
      CHECK(oracle::max_abs(u * u.adjoint() - CMatrix::Identity(d, d)) < 1e-12);
      const RMatrix t = transfer_matrix(u);
      CHECK((t.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
      CHECK((t.colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
    }
  }
  CHECK(haar_random_unitary(4, 1) == haar_random_unitary(4, 1));
}

TEST_CASE("Haar unitary phases are not biased") {
  // With the R-diagonal phases absorbed, E[U_00] = 0; without, it drifts positive.
  Complex mean = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) mean += haar_random_unitary(2, derive_seed(77, static_cast<std::uint64_t>(i)))(0, 0);
  CHECK(std::abs(mean / static_cast<double>(n)) < 0.05);
}

TEST_CASE("sampler streams") {
  Sampler s(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::set<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 100; ++k) seeds.insert(derive_seed(7, k));
  CHECK(seeds.size() == 100);
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));

  // complex normal: each part N(0, 1/2), so E|z|^2 = 1
  Sampler g(5);
  double m2 = 0.0;
  for (int i = 0; i < 20000; ++i) m2 += std::norm(g.complex_normal());
  CHECK(std::abs(m2 / 20000 - 1.0) < 0.03);
}
