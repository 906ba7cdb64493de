#include "jsd/purity.hpp"

#include <algorithm>

#include "jsd/decomp.hpp"

namespace jsd {

namespace {

IdentityReport make_report(Complex lhs, Complex rhs, double tol) {
  IdentityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_gap = std::abs(lhs - rhs);
  r.tolerance = tol;
  r.holds = r.abs_gap <= tol;
  return r;
}

void add_third_route(IdentityReport& r, double value) {
  r.third_route = value;
  r.abs_gap = std::max({r.abs_gap, std::abs(r.lhs - value), std::abs(r.rhs - value)});
  r.holds = r.abs_gap <= r.tolerance;
}

CMatrix tr_b(const BipartiteState& psi, const BipartiteState& phi) {
  return reduce_rank1(psi, phi, Side::TracedOverB).matrix;
}

CMatrix tr_a(const BipartiteState& psi, const BipartiteState& phi) {
  return reduce_rank1(psi, phi, Side::TracedOverA).matrix;
}

}  // namespace

Complex trace_of_product(const CMatrix& x, const CMatrix& y) {
  return x.cwiseProduct(y.transpose()).sum();
}

IdentityReport check_purity_equal(const BipartiteState& state, double tol) {
  const CMatrix rho_a = tr_b(state, state);
  const CMatrix rho_b = tr_a(state, state);
  IdentityReport r = make_report(trace_of_product(rho_a, rho_a), trace_of_product(rho_b, rho_b), tol);
  add_third_route(r, schmidt(state).lambdas.cwiseAbs2().sum());
  return r;
}

IdentityReport reduction_square_identity(const BipartiteState& psi, const BipartiteState& phi, double tol) {
  const CMatrix ma = tr_a(psi, phi);
  const CMatrix mb = tr_b(psi, phi);
  return make_report(trace_of_product(ma, ma), trace_of_product(mb, mb), tol);
}

IdentityReport cross_purity_identity(const BipartiteState& psi, const BipartiteState& phi, double tol) {
  const CMatrix mb = tr_b(psi, phi);
  IdentityReport r =
      make_report(trace_of_product(mb, tr_b(phi, psi)), trace_of_product(tr_a(psi, psi), tr_a(phi, phi)), tol);
  double sum_q_sq = 0.0;
  if (mb.cwiseAbs().maxCoeff() >= construction_tol(std::max(psi.dim_a(), psi.dim_b()))) {
    sum_q_sq = joint_svd(psi, phi, Side::TracedOverB).q.squaredNorm();
  }
  add_third_route(r, sum_q_sq);
  return r;
}

IdentityReport four_state_identity(const BipartiteState& psi, const BipartiteState& phi,
                                   const BipartiteState& chi, const BipartiteState& zeta, double tol) {
  return make_report(trace_of_product(tr_a(psi, chi), tr_a(phi, zeta)),
                     trace_of_product(tr_b(psi, zeta), tr_b(phi, chi)), tol);
}

}  // namespace jsd
