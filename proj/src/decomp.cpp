#include "jsd/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace jsd {

namespace {

double reduction_tol(const BipartiteState& s) {
  return construction_tol(std::max(s.dim_a(), s.dim_b()));
}

void require_same_dims(const BipartiteState& psi, const BipartiteState& phi) {
  if (psi.dim_a() != phi.dim_a() || psi.dim_b() != phi.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch, "psi and phi live on different product spaces");
  }
}

// Grids arranged so that the kept party is the row index.
std::pair<CMatrix, CMatrix> oriented_grids(const BipartiteState& psi, const BipartiteState& phi, Side side) {
  if (side == Side::TracedOverB) return {psi.amplitudes(), phi.amplitudes()};
  return {psi.amplitudes().transpose(), phi.amplitudes().transpose()};
}

CMatrix select_columns(const CMatrix& m, const std::vector<Eigen::Index>& keep) {
  CMatrix out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(keep[c]);
  return out;
}

RVector select_entries(const RVector& v, const std::vector<Eigen::Index>& keep) {
  RVector out(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out(static_cast<Eigen::Index>(c)) = v(keep[c]);
  return out;
}

double principal_phase(Complex z) {
  double a = std::arg(z);
  if (a <= -std::numbers::pi) a = std::numbers::pi;
  return a;
}

// Descending modulus, then ascending phase, then original index.
std::vector<Eigen::Index> eigenvalue_order(const CVector& ev) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const double mx = std::abs(ev(x));
    const double my = std::abs(ev(y));
    if (mx != my) return mx > my;
    return principal_phase(ev(x)) < principal_phase(ev(y));
  });
  return order;
}

}  // namespace

const char* to_string(JointKind kind) {
  switch (kind) {
    case JointKind::SvdOnB: return "SvdOnB";
    case JointKind::SvdOnA: return "SvdOnA";
    case JointKind::SeparateSchmidt: return "SeparateSchmidt";
  }
  return "Unknown";
}

CVector fix_column_phases(CMatrix& columns) {
  CVector applied = CVector::Ones(columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < columns.rows(); ++r) {
      const double mag = std::abs(columns(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best <= 0.0) continue;
    const Complex factor = std::conj(columns(pivot, c)) / best;
    columns.col(c) *= factor;
    columns(pivot, c) = Complex(std::abs(columns(pivot, c)), 0.0);
    applied(c) = factor;
  }
  return applied;
}

SchmidtDecomposition schmidt(const BipartiteState& state) {
  const CMatrix& a = state.amplitudes();
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sigma = svd.singularValues();
  const double tol = reduction_tol(state);

  CMatrix u = svd.matrixU();
  CMatrix b = svd.matrixV().conjugate();
  const CVector applied = fix_column_phases(u);

  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol) ++rank;

  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    if (j < rank) {
      b.col(j) *= std::conj(applied(j));
    } else {
      CMatrix col = b.col(j);
      fix_column_phases(col);
      b.col(j) = col;
    }
  }

  SchmidtDecomposition out;
  out.rank = rank;
  out.lambdas = sigma.head(rank).cwiseAbs2();
  out.basis_a = u.leftCols(rank);
  out.basis_b = b.leftCols(rank);
  out.full_basis_a = std::move(u);
  out.full_basis_b = std::move(b);
  return out;
}

JointSvdDecomposition joint_svd(const BipartiteState& psi, const BipartiteState& phi, Side side) {
  require_same_dims(psi, phi);
  const auto [a, b] = oriented_grids(psi, phi, side);
  const double tol = reduction_tol(psi);

  const CMatrix m = a * b.adjoint();
  if (m.cwiseAbs().maxCoeff() < tol) {
    throw Error(ErrorCode::ZeroReduction, side == Side::TracedOverB ? "Tr_B|psi><phi| vanishes"
                                                                    : "Tr_A|psi><phi| vanishes");
  }

  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& q_all = svd.singularValues();
  CMatrix u = svd.matrixU();
  CMatrix v = svd.matrixV();

  // Rephasing u_j by c requires the same factor on v_j to keep u_j q_j v_j^dagger.
  const CVector applied = fix_column_phases(u);
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    if (q_all(j) >= tol) {
      v.col(j) *= applied(j);
    } else {
      CMatrix col = v.col(j);
      fix_column_phases(col);
      v.col(j) = col;
    }
  }

  // Row j of U^dagger A is the unnormalized |j~^psi>; likewise V^dagger B.
  const CMatrix psi_rows = u.adjoint() * a;
  const CMatrix phi_rows = v.adjoint() * b;

  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    if (q_all(j) >= tol || psi_rows.row(j).norm() >= tol || phi_rows.row(j).norm() >= tol) keep.push_back(j);
  }

  JointSvdDecomposition out;
  out.side = side;
  out.basis_u = select_columns(u, keep);
  out.basis_v = select_columns(v, keep);
  out.q = select_entries(q_all, keep);
  const auto n = static_cast<Eigen::Index>(keep.size());
  out.mu.resize(n);
  out.nu.resize(n);
  out.dual_psi = CMatrix::Zero(a.cols(), n);
  out.dual_phi = CMatrix::Zero(b.cols(), n);
  out.degenerate_psi.assign(static_cast<std::size_t>(n), false);
  out.degenerate_phi.assign(static_cast<std::size_t>(n), false);

  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index j = keep[static_cast<std::size_t>(c)];
    const double norm_psi = psi_rows.row(j).norm();
    const double norm_phi = phi_rows.row(j).norm();
    out.mu(c) = norm_psi * norm_psi;
    out.nu(c) = norm_phi * norm_phi;
    if (norm_psi >= tol) {
      out.dual_psi.col(c) = psi_rows.row(j).transpose() / norm_psi;
      ++out.psi_terms;
    } else {
      out.degenerate_psi[static_cast<std::size_t>(c)] = true;
    }
    if (norm_phi >= tol) {
      out.dual_phi.col(c) = phi_rows.row(j).transpose() / norm_phi;
      ++out.phi_terms;
    } else {
      out.degenerate_phi[static_cast<std::size_t>(c)] = true;
    }
    if (out.q(c) >= tol) ++out.reduction_rank;
  }
  return out;
}

JointDiagDecomposition joint_diag(const BipartiteState& psi, const BipartiteState& phi, Side side,
                                  const DiagonalizabilityGate& gate) {
  require_same_dims(psi, phi);
  const auto [a, b] = oriented_grids(psi, phi, side);
  const double tol = reduction_tol(psi);

  const CMatrix m = a * b.adjoint();
  if (m.cwiseAbs().maxCoeff() < tol) {
    throw Error(ErrorCode::ZeroReduction, side == Side::TracedOverB ? "Tr_B|psi><phi| vanishes"
                                                                    : "Tr_A|psi><phi| vanishes");
  }
  const Eigen::Index n = m.rows();

  Eigen::ComplexEigenSolver<CMatrix> es(m, true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NotDiagonalizable, "eigensolver did not converge");
  const CVector& ev_raw = es.eigenvalues();

  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(ev_raw(j)) < tol) {
      std::ostringstream os;
      os << "eigenvalue " << j << " has modulus " << std::abs(ev_raw(j)) << " below " << tol;
      throw Error(ErrorCode::NotDiagonalizable, os.str());
    }
  }
  const double norm_m = Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
  double min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) min_gap = std::min(min_gap, std::abs(ev_raw(j) - ev_raw(k)));
  if (min_gap < gate.relative_gap * norm_m) {
    std::ostringstream os;
    os << "eigenvalue gap " << min_gap << " below " << gate.relative_gap << " * ||M||";
    throw Error(ErrorCode::NotDiagonalizable, os.str());
  }

  const auto order = eigenvalue_order(ev_raw);
  CVector ev(n);
  CMatrix s(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    ev(c) = ev_raw(src);
    s.col(c) = es.eigenvectors().col(src).normalized();
  }
  fix_column_phases(s);

  const RVector s_sigma = Eigen::JacobiSVD<CMatrix>(s).singularValues();
  const double condition = s_sigma(0) / s_sigma(n - 1);
  if (!std::isfinite(condition) || condition > gate.max_condition) {
    std::ostringstream os;
    os << "eigenvector matrix condition " << condition << " exceeds " << gate.max_condition;
    throw Error(ErrorCode::NotDiagonalizable, os.str());
  }

  const CMatrix s_inv = s.partialPivLu().inverse();
  const CMatrix psi_rows = s_inv * a;      // |j~^psi>
  const CMatrix phi_rows = s.adjoint() * b;  // |k~^phi>

  JointDiagDecomposition out;
  out.side = side;
  out.condition = condition;
  out.right_basis = s;
  out.left_dual_basis = s_inv.adjoint();
  out.delta = ev.cwiseAbs();
  out.phases.resize(n);
  out.xi.resize(n);
  out.eta.resize(n);
  out.t_basis.resize(a.cols(), n);
  out.t_dual_basis.resize(b.cols(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.phases(j) = principal_phase(ev(j));
    const double norm_psi = psi_rows.row(j).norm();
    out.xi(j) = norm_psi * norm_psi;
    out.eta(j) = out.delta(j) * out.delta(j) / out.xi(j);
    out.t_basis.col(j) = psi_rows.row(j).transpose() / norm_psi;
    out.t_dual_basis.col(j) =
        phi_rows.row(j).transpose() * std::polar(1.0, out.phases(j)) / std::sqrt(out.eta(j));
  }
  return out;
}

JointDecompositionResult joint_decompose(const BipartiteState& psi, const BipartiteState& phi) {
  require_same_dims(psi, phi);
  const double tol = reduction_tol(psi);
  JointDecompositionResult out;
  if (reduce_rank1(psi, phi, Side::TracedOverB).matrix.cwiseAbs().maxCoeff() >= tol) {
    out.kind = JointKind::SvdOnB;
    out.svd = joint_svd(psi, phi, Side::TracedOverB);
  } else if (reduce_rank1(psi, phi, Side::TracedOverA).matrix.cwiseAbs().maxCoeff() >= tol) {
    out.kind = JointKind::SvdOnA;
    out.svd = joint_svd(psi, phi, Side::TracedOverA);
  } else {
    out.kind = JointKind::SeparateSchmidt;
    out.schmidt_psi = schmidt(psi);
    out.schmidt_phi = schmidt(phi);
  }
  return out;
}

CMatrix reconstruct(const SchmidtDecomposition& dec) {
  return dec.basis_a * dec.lambdas.cwiseSqrt().cast<Complex>().asDiagonal() * dec.basis_b.transpose();
}

std::pair<CMatrix, CMatrix> reconstruct(const JointSvdDecomposition& dec) {
  CMatrix psi = dec.basis_u * dec.mu.cwiseSqrt().cast<Complex>().asDiagonal() * dec.dual_psi.transpose();
  CMatrix phi = dec.basis_v * dec.nu.cwiseSqrt().cast<Complex>().asDiagonal() * dec.dual_phi.transpose();
  if (dec.side == Side::TracedOverA) return {psi.transpose(), phi.transpose()};
  return {psi, phi};
}

std::pair<CMatrix, CMatrix> reconstruct(const JointDiagDecomposition& dec) {
  const Eigen::Index n = dec.delta.size();
  CVector phi_coeff(n);
  for (Eigen::Index k = 0; k < n; ++k) phi_coeff(k) = std::sqrt(dec.eta(k)) * std::polar(1.0, -dec.phases(k));
  CMatrix psi = dec.right_basis * dec.xi.cwiseSqrt().cast<Complex>().asDiagonal() * dec.t_basis.transpose();
  CMatrix phi = dec.left_dual_basis * phi_coeff.asDiagonal() * dec.t_dual_basis.transpose();
  if (dec.side == Side::TracedOverA) return {psi.transpose(), phi.transpose()};
  return {psi, phi};
}

double svd_duality_residual(const JointSvdDecomposition& dec) {
  // gram(j, k) = <d_k^phi|d_j^psi>
  const CMatrix gram = dec.dual_psi.transpose() * dec.dual_phi.conjugate();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < gram.rows(); ++j) {
    for (Eigen::Index k = 0; k < gram.cols(); ++k) {
      const Complex lhs = std::sqrt(dec.mu(j) * dec.nu(k)) * gram(j, k);
      const double target = j == k ? dec.q(j) : 0.0;
      worst = std::max(worst, std::abs(lhs - target));
    }
  }
  return worst;
}

Complex svd_overlap(const JointSvdDecomposition& dec) {
  Complex total = 0.0;
  for (Eigen::Index j = 0; j < dec.q.size(); ++j) total += dec.q(j) * dec.basis_v.col(j).dot(dec.basis_u.col(j));
  return total;
}

double diag_duality_residual(const JointDiagDecomposition& dec) {
  const Eigen::Index n = dec.delta.size();
  const CMatrix id = CMatrix::Identity(n, n);
  const double s_res = (dec.right_basis.adjoint() * dec.left_dual_basis - id).cwiseAbs().maxCoeff();
  const double t_res = (dec.t_basis.adjoint() * dec.t_dual_basis - id).cwiseAbs().maxCoeff();
  return std::max(s_res, t_res);
}

CVector nonzero_eigenvalues(const CMatrix& m, double tol) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  const CVector& ev = es.eigenvalues();
  const auto order = eigenvalue_order(ev);
  std::vector<Complex> kept;
  for (Eigen::Index idx : order)
    if (std::abs(ev(idx)) > tol) kept.push_back(ev(idx));
  CVector out(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out(static_cast<Eigen::Index>(i)) = kept[i];
  return out;
}

double multiset_distance(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index best_k = -1;
    for (Eigen::Index k = 0; k < b.size(); ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      const double dist = std::abs(a(i) - b(k));
      if (dist < best) {
        best = dist;
        best_k = k;
      }
    }
    used[static_cast<std::size_t>(best_k)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace jsd
