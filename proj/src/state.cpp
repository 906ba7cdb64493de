#include "jsd/state.hpp"

#include <cmath>
#include <sstream>

namespace jsd {

namespace {

void require_same_dims(const BipartiteState& psi, const BipartiteState& phi) {
  if (psi.dim_a() != phi.dim_a() || psi.dim_b() != phi.dim_b()) {
    std::ostringstream os;
    os << "states have dims " << psi.dim_a() << "x" << psi.dim_b() << " and " << phi.dim_a() << "x"
       << phi.dim_b();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace

BipartiteState::BipartiteState(CMatrix amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.rows() < 1 || amps_.cols() < 1) {
    throw Error(ErrorCode::InvalidDimension, "local dimensions must be positive");
  }
  const double norm_sq = amps_.squaredNorm();
  if (std::abs(norm_sq - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "squared norm " << norm_sq << " deviates from 1";
    throw Error(ErrorCode::NotNormalized, os.str());
  }
}

CVector BipartiteState::flat() const {
  CVector v(amps_.size());
  for (Eigen::Index j = 0; j < dim_a(); ++j)
    for (Eigen::Index k = 0; k < dim_b(); ++k) v(j * dim_b() + k) = amps_(j, k);
  return v;
}

BipartiteState state_from_amplitudes(Eigen::Index dim_a, Eigen::Index dim_b,
                                     std::span<const Complex> amplitudes, bool normalize) {
  if (dim_a < 1 || dim_b < 1) throw Error(ErrorCode::InvalidDimension, "local dimensions must be positive");
  if (static_cast<Eigen::Index>(amplitudes.size()) != dim_a * dim_b) {
    std::ostringstream os;
    os << "expected " << dim_a * dim_b << " amplitudes, got " << amplitudes.size();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  CMatrix grid(dim_a, dim_b);
  for (Eigen::Index j = 0; j < dim_a; ++j)
    for (Eigen::Index k = 0; k < dim_b; ++k) grid(j, k) = amplitudes[j * dim_b + k];
  return state_from_grid(grid, normalize);
}

BipartiteState state_from_grid(const CMatrix& grid, bool normalize) {
  const double norm = grid.norm();
  if (!std::isfinite(norm)) throw Error(ErrorCode::ParseError, "non-finite amplitude");
  if (norm < 1e-14) throw Error(ErrorCode::ZeroVector, "amplitude vector has zero norm");
  if (!normalize) return BipartiteState(grid);
  CMatrix scaled = grid / norm;
  // One rescale can leave the norm a few ulps off 1; a second pass settles it.
  scaled /= scaled.norm();
  return BipartiteState(std::move(scaled));
}

BipartiteState basis_state(Eigen::Index dim_a, Eigen::Index dim_b, Eigen::Index j, Eigen::Index k) {
  CMatrix grid = CMatrix::Zero(dim_a, dim_b);
  grid(j, k) = 1.0;
  return BipartiteState(std::move(grid));
}

Rank1Reduction reduce_rank1(const BipartiteState& psi, const BipartiteState& phi, Side side) {
  require_same_dims(psi, phi);
  const CMatrix& a = psi.amplitudes();
  const CMatrix& b = phi.amplitudes();
  if (side == Side::TracedOverB) return {side, a * b.adjoint()};
  return {side, a.transpose() * b.conjugate()};
}

Complex overlap(const BipartiteState& psi, const BipartiteState& phi) {
  require_same_dims(psi, phi);
  return (phi.amplitudes().conjugate().cwiseProduct(psi.amplitudes())).sum();
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix gram = u * u.adjoint();
  return (gram - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

BipartiteState apply_local(const BipartiteState& state, const CMatrix& u_a, const CMatrix& u_b) {
  if (u_a.rows() != state.dim_a() || u_a.cols() != state.dim_a() || u_b.rows() != state.dim_b() ||
      u_b.cols() != state.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch, "local unitary shape does not match the state");
  }
  if (!is_unitary(u_a, 1e-10) || !is_unitary(u_b, 1e-10)) {
    throw Error(ErrorCode::NotUnitary, "local factor deviates from unitarity by more than 1e-10");
  }
  CMatrix rotated = u_a * state.amplitudes() * u_b.transpose();
  // Factors are only unitary to 1e-10; renormalize when that shows in the norm.
  if (std::abs(rotated.squaredNorm() - 1.0) > 1e-12) return state_from_grid(rotated, true);
  return BipartiteState(std::move(rotated));
}

BipartiteState pad_to_square(const BipartiteState& state) {
  const Eigen::Index d = std::max(state.dim_a(), state.dim_b());
  if (state.dim_a() == d && state.dim_b() == d) return state;
  CMatrix grid = CMatrix::Zero(d, d);
  grid.topLeftCorner(state.dim_a(), state.dim_b()) = state.amplitudes();
  return BipartiteState(std::move(grid));
}

}  // namespace jsd
