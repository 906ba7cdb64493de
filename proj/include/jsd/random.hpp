#pragma once

#include <cstdint>
#include <random>

#include "jsd/state.hpp"

namespace jsd {

/// Seeded sampler used for every random draw in the library.
///
/// The stream is fixed so that seeds reproduce across platforms and standard
/// library versions:
///   - engine: std::mt19937_64 seeded with the 64-bit seed (fully specified by
///     the C++ standard);
///   - uniform: (x >> 11) * 2^-53, giving [0, 1) with 53 random bits;
///   - normal: Box-Muller on two consecutive uniforms, u1 mapped to (0, 1], both
///     outputs of each pair consumed in order;
///   - complex Gaussian: real part then imaginary part, each N(0, 1/2).
/// std::normal_distribution is not used because its algorithm is unspecified.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent seed for sub-stream `stream` of `seed` (splitmix64 finalizer
/// over seed + golden-ratio multiple of stream + 1).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-random pure state: a standard complex Gaussian vector, normalized.
BipartiteState haar_random_state(Eigen::Index dim_a, Eigen::Index dim_b, std::uint64_t seed);

/// Haar-random d x d unitary: Householder QR of a complex Gaussian matrix with
/// the columns of Q rephased so that R has a positive real diagonal.
CMatrix haar_random_unitary(Eigen::Index d, std::uint64_t seed);

/// |U_jk|^2; doubly stochastic whenever U is unitary.
RMatrix transfer_matrix(const CMatrix& unitary);

}  // namespace jsd
