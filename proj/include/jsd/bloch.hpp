#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsd/state.hpp"

namespace jsd {

enum class GellMannFamily { Identity, Symmetric, Antisymmetric, Diagonal };

struct SparseEntry {
  Eigen::Index row;
  Eigen::Index col;
  Complex value;
};

/// Identity plus the d^2-1 generalized Gell-Mann matrices, normalized to
/// Tr(g_j g_k) = d delta_jk.
///
/// Order: symmetric pairs (j<k, lexicographic), antisymmetric pairs, then the
/// d-1 diagonal elements. Index 0 is the identity.
struct HermitianBasis {
  Eigen::Index d = 0;
  std::vector<CMatrix> elements;
  std::vector<GellMannFamily> families;
  std::vector<std::vector<SparseEntry>> sparse;  // nonzeros of each element

  Eigen::Index size() const { return static_cast<Eigen::Index>(elements.size()); }
};

HermitianBasis gell_mann_basis(Eigen::Index d);

/// Coefficients x_jk = Tr[(g_j (x) g_k) O] of an operator O on C^d (x) C^d, so that
/// O = (1/d^2) sum_jk x_jk g_j (x) g_k.
struct BlochExpansion {
  Eigen::Index d = 0;
  CMatrix coeffs;  // d^2 x d^2, index 0 = identity slot
  bool hermitian_input = false;
};

/// `op` is indexed by flat product indices (j*d + k).
BlochExpansion bloch_expand(const CMatrix& op, const HermitianBasis& basis, bool hermitian_input);

/// |psi><phi| after padding both states to equal local dimensions.
BlochExpansion bloch_expand_rank1(const BipartiteState& psi, const BipartiteState& phi,
                                  const HermitianBasis& basis);

CMatrix bloch_reconstruct(const BlochExpansion& expansion, const HermitianBasis& basis);

/// Squared sector lengths of an expansion (unnormalized: they sum to
/// d^2 Tr(O^dagger O)).
struct SectorLengths {
  double len0 = 0.0;
  double len1a = 0.0;
  double len1b = 0.0;
  double len2 = 0.0;

  double total() const { return len0 + len1a + len1b + len2; }
};

SectorLengths sector_lengths(const BlochExpansion& expansion);

/// Projector |Psi><Psi| = diag + offdiag relative to the computational
/// product basis.
struct DiagOffdiag {
  CMatrix diag;
  CMatrix offdiag;
};

DiagOffdiag diag_offdiag_split(const BipartiteState& state);

/// Sector lengths of |Psi><Psi| together with the diag/offdiag contributions.
///
/// len* are squared coefficient sums (Bell: 1, 0, 0, 3). The diag_* and
/// offdiag_* contributions are squared Hilbert-Schmidt norms of the sector
/// projections, i.e. coefficient sums divided by d^2, so that all five add up
/// to Tr rho^2 = 1 and diag_s + offdiag_s = len_s / d^2.
struct SectorReport {
  Eigen::Index d = 0;
  bool padded = false;
  std::string basis_label;
  double len0 = 0.0;
  double len1a = 0.0;
  double len1b = 0.0;
  double len2 = 0.0;
  double diag_0 = 0.0;
  double diag_1 = 0.0;
  double diag_2 = 0.0;
  double offdiag_1 = 0.0;
  double offdiag_2 = 0.0;
  // offdiag_2 evaluated from the amplitudes without a Bloch expansion.
  double offdiag_2_closed_form = 0.0;
};

SectorReport sector_contributions(const BipartiteState& state, const std::string& basis_label = "computational");
SectorReport sector_contributions(const BipartiteState& state, const HermitianBasis& basis,
                                  const std::string& basis_label);

/// C^2 = 2(1 - sum_j lambda_j^2).
double concurrence_sq(const BipartiteState& state);

/// The state rewritten in its own Schmidt product basis (padded to square).
BipartiteState to_schmidt_basis(const BipartiteState& state);

/// diag contribution to the 2-sector computed from the weights p_kl = |a_kl|^2:
/// sum p^2 - (sum h_A^2 + sum h_B^2)/d + 1/d^2.
double diag_2sector_from_weights(const RMatrix& weights);

/// offdiag contribution to the 2-sector from the amplitudes:
/// (1 - sum p^2) - (1/d) sum_{j!=l} |rho_A(j,l)|^2 - (1/d) sum_{k!=m} |rho_B(k,m)|^2.
double offdiag_2sector_from_amplitudes(const CMatrix& amplitudes);

struct ScanRow {
  std::int64_t sample = 0;
  double diag_0 = 0.0;
  double diag_1 = 0.0;
  double diag_2 = 0.0;
  double offdiag_1 = 0.0;
  double offdiag_2 = 0.0;
};

struct ScanReport {
  SectorReport reference;  // Schmidt basis
  double half_concurrence_sq = 0.0;
  double max_diag_2 = 0.0;
  double min_offdiag_2 = 0.0;
  std::int64_t violations = 0;
  double tolerance = 1e-8;
  std::vector<ScanRow> rows;
};

/// Samples Haar local-unitary pairs (sample i draws u_a from derive_seed(seed, 2i)
/// and u_b from derive_seed(seed, 2i+1)) and compares each basis against the
/// Schmidt-basis reference.
ScanReport extremal_scan(const BipartiteState& state, std::int64_t n_samples, std::uint64_t seed);

struct OptimizeResult {
  double best_value = 0.0;
  double schmidt_reference = 0.0;
  CMatrix u_a;
  CMatrix u_b;
  std::int64_t sweeps = 0;
  bool iteration_limit = false;
};

/// Maximizes the diag 2-sector contribution over local unitaries by Jacobi
/// sweeps of complex plane rotations, one golden-section search per angle,
/// with random restarts. Restart 0 starts from the given basis.
OptimizeResult optimize_diag_2sector(const BipartiteState& state, int restarts, int iters, std::uint64_t seed);

}  // namespace jsd
