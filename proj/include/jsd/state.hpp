#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "jsd/error.hpp"

namespace jsd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Absolute tolerances scale linearly with the contraction length d.
inline double construction_tol(Eigen::Index d) { return 1e-12 * static_cast<double>(d); }
inline double identity_tol(Eigen::Index d) { return 1e-9 * static_cast<double>(d); }

/// Which party was traced out when forming a one-party reduction.
enum class Side { TracedOverA, TracedOverB };

enum class Party { A, B };

/// Normalized pure state on a dA x dB product space.
///
/// Amplitudes are stored as the dA x dB coefficient grid a_jk (row = party A),
/// so the flat index of basis state |j>|k> is j*dB + k.
class BipartiteState {
 public:
  /// Takes ownership of an already-normalized grid; throws NotNormalized
  /// otherwise.
  explicit BipartiteState(CMatrix amplitudes);

  Eigen::Index dim_a() const { return amps_.rows(); }
  Eigen::Index dim_b() const { return amps_.cols(); }
  const CMatrix& amplitudes() const { return amps_; }
  Complex operator()(Eigen::Index j, Eigen::Index k) const { return amps_(j, k); }

  /// Flat amplitude vector in j*dB + k order.
  CVector flat() const;

  bool operator==(const BipartiteState& other) const { return amps_ == other.amps_; }

 private:
  CMatrix amps_;
};

/// Builds a state from a flat list. With normalize off the list must already
/// have unit norm within 1e-12.
BipartiteState state_from_amplitudes(Eigen::Index dim_a, Eigen::Index dim_b,
                                     std::span<const Complex> amplitudes, bool normalize);

/// Normalizes an arbitrary nonzero grid.
BipartiteState state_from_grid(const CMatrix& grid, bool normalize = true);

/// Computational product basis state |j>|k>.
BipartiteState basis_state(Eigen::Index dim_a, Eigen::Index dim_b, Eigen::Index j, Eigen::Index k);

struct Rank1Reduction {
  Side side;
  /// Tr_B|psi><phi| = A B^dagger (dA x dA) or Tr_A|psi><phi| = A^T B^* (dB x dB).
  CMatrix matrix;
};

Rank1Reduction reduce_rank1(const BipartiteState& psi, const BipartiteState& phi, Side side);

/// <phi|psi> = sum_jk conj(b_jk) a_jk.
Complex overlap(const BipartiteState& psi, const BipartiteState& phi);

/// Amplitude grid becomes u_a * A * u_b^T.
BipartiteState apply_local(const BipartiteState& state, const CMatrix& u_a, const CMatrix& u_b);

/// Pads the smaller party with zero amplitudes so both local dimensions equal
/// max(dA, dB).
BipartiteState pad_to_square(const BipartiteState& state);

bool is_unitary(const CMatrix& u, double tol);

}  // namespace jsd
