#include "jsd/majorization.hpp"

#include <algorithm>
#include <functional>

#include "jsd/bloch.hpp"
#include "jsd/decomp.hpp"

namespace jsd {

namespace {

RVector sorted_descending(const RVector& v) {
  RVector out = v;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double middle_term(const RMatrix& p) {
  const Eigen::Index d = p.rows();
  double party_a = 0.0;
  double party_b = 0.0;
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index m = 0; m < d; ++m) {
          const double w = p(j, k) * p(l, m);
          if (j != l) party_a += w;
          if (k != m) party_b += w;
        }
  return 0.5 * (party_a + party_b);
}

double half_concurrence_from(const RVector& lam) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < lam.size(); ++j)
    for (Eigen::Index l = 0; l < lam.size(); ++l)
      if (j != l) total += lam(j) * lam(l);
  return total;
}

}  // namespace

RVector diagonal_vector(const BipartiteState& state, Party party) {
  const RMatrix p = state.amplitudes().cwiseAbs2();
  if (party == Party::A) return p.rowwise().sum();
  return p.colwise().sum().transpose();
}

MajorizationWitness majorization_witness(const BipartiteState& state, Party party) {
  const SchmidtDecomposition s = schmidt(state);
  const CMatrix& basis = party == Party::A ? s.full_basis_a : s.full_basis_b;
  MajorizationWitness w;
  w.party = party;
  w.lam = RVector::Zero(basis.cols());
  w.lam.head(s.rank) = s.lambdas;
  w.h = diagonal_vector(state, party);
  w.transfer = basis.cwiseAbs2();
  w.majorizes = majorizes(w.lam, w.h);
  return w;
}

bool majorizes(const RVector& lam, const RVector& h) {
  if (lam.size() != h.size()) throw Error(ErrorCode::LengthMismatch, "vectors differ in length");
  if (std::abs(lam.sum() - h.sum()) > 1e-9) throw Error(ErrorCode::SumMismatch, "vectors differ in total");
  const RVector a = sorted_descending(lam);
  const RVector b = sorted_descending(h);
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    sum_a += a(i);
    sum_b += b(i);
    if (sum_a < sum_b - 1e-10) return false;
  }
  return true;
}

double doubly_stochastic_residual(const RMatrix& m) {
  const double rows = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

double elementary_symmetric_2(const RVector& v) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j)
    for (Eigen::Index k = j + 1; k < v.size(); ++k) total += v(j) * v(k);
  return total;
}

double offdiag_2sector_closed_form(const BipartiteState& state) {
  const BipartiteState padded = pad_to_square(state);
  const RMatrix p = padded.amplitudes().cwiseAbs2();
  const Eigen::Index d = p.rows();
  double all_pairs = 0.0;
  double same_b = 0.0;  // j != l, shared k
  double same_a = 0.0;  // shared j, k != l
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index m = 0; m < d; ++m)
          if (j != l || k != m) all_pairs += p(j, k) * p(l, m);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index k = 0; k < d; ++k) {
        if (j != l) same_b += p(j, k) * p(l, k);
        if (j != l) same_a += p(k, j) * p(k, l);
      }
  const double inv_d = 1.0 / static_cast<double>(d);
  return all_pairs - inv_d * same_b - inv_d * same_a;
}

ChainReport inequality_chain(const BipartiteState& state) {
  const BipartiteState padded = pad_to_square(state);
  const RMatrix p = padded.amplitudes().cwiseAbs2();
  ChainReport r;
  r.d = padded.dim_a();
  r.off_2sec = offdiag_2sector_closed_form(padded);
  r.off_2sec_bloch = sector_contributions(padded).offdiag_2;
  r.closed_form_gap = std::abs(r.off_2sec - r.off_2sec_bloch);
  r.middle = middle_term(p);
  r.half_concurrence_sq = half_concurrence_from(schmidt(padded).lambdas);
  r.ordered = r.off_2sec >= r.middle - r.slack && r.middle >= r.half_concurrence_sq - r.slack;
  r.bloch_above_half_concurrence = r.off_2sec_bloch >= r.half_concurrence_sq - r.slack;
  r.schmidt_tightness_gap = offdiag_2sector_closed_form(to_schmidt_basis(padded)) - r.half_concurrence_sq;
  r.tight = std::abs(r.schmidt_tightness_gap) < r.slack;
  return r;
}

SummationRuleReport summation_rule_check(const BipartiteState& state) {
  const RMatrix p = state.amplitudes().cwiseAbs2();
  const Eigen::Index da = p.rows();
  const Eigen::Index db = p.cols();
  SummationRuleReport r;
  for (Eigen::Index j = 0; j < da; ++j)
    for (Eigen::Index k = 0; k < db; ++k)
      for (Eigen::Index l = 0; l < da; ++l)
        for (Eigen::Index m = 0; m < db; ++m) {
          const double w = p(j, k) * p(l, m);
          if (j != l || k != m) r.lhs += w;
          if (j != l) r.rhs += w;
          if (j == l && m != k) r.rhs += w;
        }
  r.holds = std::abs(r.lhs - r.rhs) <= 1e-12;
  return r;
}

}  // namespace jsd
