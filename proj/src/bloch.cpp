#include "jsd/bloch.hpp"

#include <algorithm>
#include <limits>

#include "jsd/decomp.hpp"
#include "jsd/random.hpp"

namespace jsd {

namespace {

struct SectorSums {
  double s0 = 0.0;
  double s1a = 0.0;
  double s1b = 0.0;
  double s2 = 0.0;
};

SectorSums sector_sums(const CMatrix& coeffs) {
  SectorSums s;
  for (Eigen::Index j = 0; j < coeffs.rows(); ++j) {
    for (Eigen::Index k = 0; k < coeffs.cols(); ++k) {
      const double w = std::norm(coeffs(j, k));
      if (j == 0 && k == 0) s.s0 += w;
      else if (k == 0) s.s1a += w;
      else if (j == 0) s.s1b += w;
      else s.s2 += w;
    }
  }
  return s;
}

CMatrix projector(const BipartiteState& state) {
  const CVector v = state.flat();
  return v * v.adjoint();
}

}  // namespace

BlochExpansion bloch_expand(const CMatrix& op, const HermitianBasis& basis, bool hermitian_input) {
  const Eigen::Index d = basis.d;
  if (op.rows() != d * d || op.cols() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "operator is not d^2 x d^2 for the basis dimension");
  }
  const Eigen::Index n = basis.size();
  BlochExpansion out;
  out.d = d;
  out.hermitian_input = hermitian_input;
  out.coeffs = CMatrix::Zero(n, n);

  CMatrix partial(d, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    // partial(b, e) = sum_{a,c} g_j(c, a) op(a d + b, c d + e)
    partial.setZero();
    for (const auto& [c, a, gv] : basis.sparse[static_cast<std::size_t>(j)])
      for (Eigen::Index b = 0; b < d; ++b)
        for (Eigen::Index e = 0; e < d; ++e) partial(b, e) += gv * op(a * d + b, c * d + e);
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex x = 0.0;
      for (const auto& [e, b, gv] : basis.sparse[static_cast<std::size_t>(k)]) x += gv * partial(b, e);
      out.coeffs(j, k) = hermitian_input ? Complex(x.real(), 0.0) : x;
    }
  }
  return out;
}

BlochExpansion bloch_expand_rank1(const BipartiteState& psi, const BipartiteState& phi,
                                  const HermitianBasis& basis) {
  if (psi.dim_a() != phi.dim_a() || psi.dim_b() != phi.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch, "psi and phi live on different product spaces");
  }
  const CVector u = pad_to_square(psi).flat();
  const CVector v = pad_to_square(phi).flat();
  return bloch_expand(u * v.adjoint(), basis, false);
}

CMatrix bloch_reconstruct(const BlochExpansion& expansion, const HermitianBasis& basis) {
  const Eigen::Index d = basis.d;
  const Eigen::Index n = basis.size();
  CMatrix op = CMatrix::Zero(d * d, d * d);
  const double scale = 1.0 / static_cast<double>(d * d);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex x = expansion.coeffs(j, k) * scale;
      if (x == Complex(0.0)) continue;
      for (const auto& [a, c, gj] : basis.sparse[static_cast<std::size_t>(j)])
        for (const auto& [b, e, gk] : basis.sparse[static_cast<std::size_t>(k)])
          op(a * d + b, c * d + e) += x * gj * gk;
    }
  }
  return op;
}

SectorLengths sector_lengths(const BlochExpansion& expansion) {
  const SectorSums s = sector_sums(expansion.coeffs);
  return {s.s0, s.s1a, s.s1b, s.s2};
}

DiagOffdiag diag_offdiag_split(const BipartiteState& state) {
  DiagOffdiag out;
  const CMatrix proj = projector(state);
  out.diag = CMatrix::Zero(proj.rows(), proj.cols());
  out.diag.diagonal() = proj.diagonal();
  out.offdiag = proj - out.diag;
  return out;
}

SectorReport sector_contributions(const BipartiteState& state, const std::string& basis_label) {
  const Eigen::Index d = std::max(state.dim_a(), state.dim_b());
  return sector_contributions(state, gell_mann_basis(d), basis_label);
}

SectorReport sector_contributions(const BipartiteState& state, const HermitianBasis& basis,
                                  const std::string& basis_label) {
  const BipartiteState padded = pad_to_square(state);
  const Eigen::Index d = padded.dim_a();
  if (basis.d != d) throw Error(ErrorCode::DimensionMismatch, "basis dimension differs from padded state");

  const DiagOffdiag split = diag_offdiag_split(padded);
  const BlochExpansion full = bloch_expand(split.diag + split.offdiag, basis, true);
  const BlochExpansion diag = bloch_expand(split.diag, basis, true);
  const CMatrix off_coeffs = full.coeffs - diag.coeffs;

  const SectorSums all = sector_sums(full.coeffs);
  const SectorSums ds = sector_sums(diag.coeffs);
  const SectorSums os = sector_sums(off_coeffs);
  const double norm = 1.0 / static_cast<double>(d * d);

  SectorReport r;
  r.d = d;
  r.padded = state.dim_a() != state.dim_b();
  r.basis_label = basis_label;
  r.len0 = all.s0;
  r.len1a = all.s1a;
  r.len1b = all.s1b;
  r.len2 = all.s2;
  r.diag_0 = ds.s0 * norm;
  r.diag_1 = (ds.s1a + ds.s1b) * norm;
  r.diag_2 = ds.s2 * norm;
  r.offdiag_1 = (os.s1a + os.s1b) * norm;
  r.offdiag_2 = os.s2 * norm;
  r.offdiag_2_closed_form = offdiag_2sector_from_amplitudes(padded.amplitudes());
  return r;
}

double concurrence_sq(const BipartiteState& state) {
  return 2.0 * (1.0 - schmidt(state).lambdas.cwiseAbs2().sum());
}

BipartiteState to_schmidt_basis(const BipartiteState& state) {
  const BipartiteState padded = pad_to_square(state);
  const SchmidtDecomposition s = schmidt(padded);
  return apply_local(padded, s.full_basis_a.adjoint(), s.full_basis_b.adjoint());
}

double diag_2sector_from_weights(const RMatrix& weights) {
  const double d = static_cast<double>(weights.rows());
  const double h_a = weights.rowwise().sum().squaredNorm();
  const double h_b = weights.colwise().sum().squaredNorm();
  return weights.squaredNorm() - (h_a + h_b) / d + 1.0 / (d * d);
}

double offdiag_2sector_from_amplitudes(const CMatrix& amplitudes) {
  const double d = static_cast<double>(amplitudes.rows());
  const RMatrix p = amplitudes.cwiseAbs2();
  const CMatrix rho_a = amplitudes * amplitudes.adjoint();
  const CMatrix rho_b = amplitudes.transpose() * amplitudes.conjugate();
  const double off_a = rho_a.squaredNorm() - rho_a.diagonal().squaredNorm();
  const double off_b = rho_b.squaredNorm() - rho_b.diagonal().squaredNorm();
  return (1.0 - p.squaredNorm()) - (off_a + off_b) / d;
}

ScanReport extremal_scan(const BipartiteState& state, std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorCode::InvalidDimension, "scan needs at least one sample");
  const BipartiteState reference_state = to_schmidt_basis(state);
  const Eigen::Index d = reference_state.dim_a();
  const HermitianBasis basis = gell_mann_basis(d);

  ScanReport report;
  report.reference = sector_contributions(reference_state, basis, "schmidt");
  report.half_concurrence_sq = 0.5 * concurrence_sq(state);
  report.max_diag_2 = -std::numeric_limits<double>::infinity();
  report.min_offdiag_2 = std::numeric_limits<double>::infinity();
  report.rows.reserve(static_cast<std::size_t>(n_samples));

  for (std::int64_t i = 0; i < n_samples; ++i) {
    const auto stream = static_cast<std::uint64_t>(i);
    const CMatrix u_a = haar_random_unitary(d, derive_seed(seed, 2 * stream));
    const CMatrix u_b = haar_random_unitary(d, derive_seed(seed, 2 * stream + 1));
    const SectorReport r = sector_contributions(apply_local(reference_state, u_a, u_b), basis, "sample");
    report.rows.push_back({i, r.diag_0, r.diag_1, r.diag_2, r.offdiag_1, r.offdiag_2});
    report.max_diag_2 = std::max(report.max_diag_2, r.diag_2);
    report.min_offdiag_2 = std::min(report.min_offdiag_2, r.offdiag_2);
    const bool beats_diag = r.diag_2 > report.reference.diag_2 + report.tolerance;
    const bool beats_off = r.offdiag_2 < report.reference.offdiag_2 - report.tolerance ||
                           r.offdiag_2 < report.half_concurrence_sq - report.tolerance;
    if (beats_diag || beats_off) ++report.violations;
  }
  return report;
}

}  // namespace jsd
