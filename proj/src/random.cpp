#include "jsd/random.hpp"

#include <cmath>
#include <numbers>

namespace jsd {

double Sampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Sampler::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Sampler::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BipartiteState haar_random_state(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed) {
  if (dim_a < 1 || dim_b < 1) throw Error(ErrorCode::InvalidDimension, "local dimensions must be positive");
  Sampler sampler(seed);
  CMatrix grid(dim_a, dim_b);
  for (Eigen::Index j = 0; j < dim_a; ++j)
    for (Eigen::Index k = 0; k < dim_b; ++k) grid(j, k) = sampler.complex_normal();
  return state_from_grid(grid, true);
}

CMatrix haar_random_unitary(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::InvalidDimension, "unitary dimension must be positive");
  Sampler sampler(seed);
  CMatrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) z(j, k) = sampler.complex_normal();

  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

RMatrix transfer_matrix(const CMatrix& unitary) {
  return unitary.cwiseAbs2();
}

}  // namespace jsd
