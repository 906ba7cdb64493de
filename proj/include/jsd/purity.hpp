#pragma once

#include <optional>

#include "jsd/state.hpp"

namespace jsd {

struct IdentityReport {
  Complex lhs;
  Complex rhs;
  double abs_gap = 0.0;
  double tolerance = 0.0;
  bool holds = false;
  // Third route where one exists: sum of Schmidt lambda^2 for the purity
  // relation, sum of q_j^2 for the cross-purity relation. abs_gap already
  // includes its deviation from lhs.
  std::optional<double> third_route;
};

inline constexpr double kPurityTol = 1e-10;
inline constexpr double kCrossPurityTol = 1e-9;

/// Tr rho_A^2 vs Tr rho_B^2, with the Schmidt spectrum as third route.
IdentityReport check_purity_equal(const BipartiteState& state, double tol = kPurityTol);

/// Tr[(Tr_A|psi><phi|)^2] vs Tr[(Tr_B|psi><phi|)^2].
IdentityReport reduction_square_identity(const BipartiteState& psi, const BipartiteState& phi,
                                         double tol = kPurityTol);

/// Tr[Tr_B|psi><phi| Tr_B|phi><psi|] vs Tr[Tr_A|psi><psi| Tr_A|phi><phi|], third
/// route sum_j q_j^2 from the joint SVD (zero when Tr_B|psi><phi| vanishes).
IdentityReport cross_purity_identity(const BipartiteState& psi, const BipartiteState& phi,
                                     double tol = kCrossPurityTol);

/// Tr[Tr_A|psi><chi| Tr_A|phi><zeta|] vs Tr[Tr_B|psi><zeta| Tr_B|phi><chi|].
IdentityReport four_state_identity(const BipartiteState& psi, const BipartiteState& phi,
                                   const BipartiteState& chi, const BipartiteState& zeta,
                                   double tol = kPurityTol);

/// Tr(X Y) without forming the product.
Complex trace_of_product(const CMatrix& x, const CMatrix& y);

}  // namespace jsd
