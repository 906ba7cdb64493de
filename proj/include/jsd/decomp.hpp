#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "jsd/state.hpp"

namespace jsd {

/// psi = sum_j sqrt(lambda_j) |a_j>|b_j>, lambda descending and strictly
/// positive.
struct SchmidtDecomposition {
  RVector lambdas;
  CMatrix basis_a;  // dA x rank
  CMatrix basis_b;  // dB x rank
  Eigen::Index rank = 0;
  // Completed orthonormal bases (dA x dA, dB x dB) whose leading columns are
  // basis_a / basis_b. Used for basis changes and transfer matrices.
  CMatrix full_basis_a;
  CMatrix full_basis_b;
};

/// SVD-based joint decomposition of a pair (psi, phi).
///
/// For side TracedOverB the orthonormal families u, v live on party A and the
/// dual vectors on party B:
///   psi = sum_j sqrt(mu_j) |u_j>|d_j^psi>,  phi = sum_k sqrt(nu_k) |v_k>|d_k^phi>,
/// with Tr_B|psi><phi| = sum_j q_j |u_j><v_j|. TracedOverA swaps the roles of
/// the parties.
struct JointSvdDecomposition {
  Side side = Side::TracedOverB;
  CMatrix basis_u;
  CMatrix basis_v;
  RVector q;
  RVector mu;
  RVector nu;
  CMatrix dual_psi;
  CMatrix dual_phi;
  // A zero weight leaves the dual direction undefined; its column is stored
  // as zero and flagged here.
  std::vector<bool> degenerate_psi;
  std::vector<bool> degenerate_phi;
  Eigen::Index reduction_rank = 0;  // count of q_j above tolerance
  Eigen::Index psi_terms = 0;       // count of mu_j above tolerance
  Eigen::Index phi_terms = 0;       // count of nu_k above tolerance
};

/// Diagonalization-based joint decomposition:
///   psi = sum_j sqrt(xi_j) |s_j>|t_j>,
///   phi = sum_k sqrt(eta_k) e^{-i phase_k} |s^-1_k>|t^-1_k>,
/// where Tr_B|psi><phi| = S D S^-1 with D = diag(delta_j e^{i phase_j}).
struct JointDiagDecomposition {
  Side side = Side::TracedOverB;
  CMatrix right_basis;      // columns s_j
  CMatrix left_dual_basis;  // columns s^-1_k, <s_j|s^-1_k> = delta_jk
  CMatrix t_basis;          // columns t_j, unit norm
  CMatrix t_dual_basis;     // columns t^-1_k, <t_j|t^-1_k> = delta_jk
  RVector delta;
  RVector phases;  // in (-pi, pi]
  RVector xi;
  RVector eta;
  double condition = 1.0;  // 2-norm condition number of S
};

enum class JointKind { SvdOnB, SvdOnA, SeparateSchmidt };

const char* to_string(JointKind kind);

struct JointDecompositionResult {
  JointKind kind = JointKind::SvdOnB;
  std::optional<JointSvdDecomposition> svd;
  std::optional<SchmidtDecomposition> schmidt_psi;
  std::optional<SchmidtDecomposition> schmidt_phi;
};

/// Gate thresholds for joint_diag.
struct DiagonalizabilityGate {
  double relative_gap = 1e-8;  // min pairwise eigenvalue gap / ||M||_2
  double max_condition = 1e8;
};

SchmidtDecomposition schmidt(const BipartiteState& state);

JointSvdDecomposition joint_svd(const BipartiteState& psi, const BipartiteState& phi, Side side);

JointDiagDecomposition joint_diag(const BipartiteState& psi, const BipartiteState& phi, Side side,
                                  const DiagonalizabilityGate& gate = {});

JointDecompositionResult joint_decompose(const BipartiteState& psi, const BipartiteState& phi);

/// Amplitude grid rebuilt from the stored factors. Not renormalized.
CMatrix reconstruct(const SchmidtDecomposition& dec);
std::pair<CMatrix, CMatrix> reconstruct(const JointSvdDecomposition& dec);
std::pair<CMatrix, CMatrix> reconstruct(const JointDiagDecomposition& dec);

/// max_jk |sqrt(mu_j nu_k) <d_k^phi|d_j^psi> - q_j delta_jk|.
double svd_duality_residual(const JointSvdDecomposition& dec);

/// sum_j q_j <v_j|u_j>.
Complex svd_overlap(const JointSvdDecomposition& dec);

/// Largest of the two dual-basis residuals max|<s_j|s^-1_k> - delta_jk|,
/// max|<t_j|t^-1_k> - delta_jk|.
double diag_duality_residual(const JointDiagDecomposition& dec);

/// Eigenvalues of a square matrix whose modulus exceeds `tol`, sorted by
/// descending modulus (ties by ascending phase).
CVector nonzero_eigenvalues(const CMatrix& m, double tol);

/// Largest distance in an optimal-greedy pairing of two eigenvalue multisets;
/// infinity when the counts differ.
double multiset_distance(const CVector& a, const CVector& b);

/// Multiplies each column by a unit phase so its largest-magnitude entry is
/// real positive. Returns the applied phases.
CVector fix_column_phases(CMatrix& columns);

}  // namespace jsd
