#pragma once

#include "jsd/state.hpp"

namespace jsd {

/// Schmidt spectrum lambda, the diagonal h of one marginal in the current
/// basis, and the transfer matrix M_jk = |W_jk|^2 (W = that party's Schmidt
/// basis in current coordinates) with h = M lambda.
struct MajorizationWitness {
  Party party = Party::A;
  RVector lam;  // descending, zero-padded to the party dimension
  RVector h;
  RMatrix transfer;
  bool majorizes = false;
};

/// h_j = sum_l |a_jl|^2 (party A) or h_l = sum_j |a_jl|^2 (party B).
RVector diagonal_vector(const BipartiteState& state, Party party);

MajorizationWitness majorization_witness(const BipartiteState& state, Party party);

/// Hardy-Littlewood-Polya partial-sum test after sorting both vectors in
/// descending order; slack 1e-10 on each partial sum.
bool majorizes(const RVector& lam, const RVector& h);

/// Largest deviation of row and column sums from 1.
double doubly_stochastic_residual(const RMatrix& m);

/// sum_{j<k} v_j v_k
double elementary_symmetric_2(const RVector& v);

/// Offdiag 2-sector length written as the incoherent sum
///   sum_{(jk)!=(lm)} p_jk p_lm - (1/d) sum_{j!=l,k} p_jk p_lk - (1/d) sum_{j,k!=l} p_jk p_jl
/// with p = |a|^2 on the padded grid. It agrees with the Bloch-expansion value
/// when the marginals carry no offdiagonal coherences (e.g. in the Schmidt
/// basis) but not for general states.
double offdiag_2sector_closed_form(const BipartiteState& state);

struct ChainReport {
  Eigen::Index d = 0;
  double off_2sec = 0.0;          // closed form above
  double off_2sec_bloch = 0.0;    // Gell-Mann expansion value
  double closed_form_gap = 0.0;   // |off_2sec - off_2sec_bloch|
  double middle = 0.0;            // party-symmetrized 2 sum_{j<l} h_j h_l
  double half_concurrence_sq = 0.0;  // sum_{j!=l} lambda_j lambda_l
  double schmidt_tightness_gap = 0.0;  // off_2sec - half_concurrence_sq in the Schmidt basis
  double slack = 1e-9;
  bool ordered = false;  // off_2sec >= middle >= half_concurrence_sq
  bool bloch_above_half_concurrence = false;
  bool tight = false;
};

/// Evaluates the three terms of the offdiag lower-bound chain in the state's
/// current basis and the tightness gap after rotating to the Schmidt basis.
ChainReport inequality_chain(const BipartiteState& state);

struct SummationRuleReport {
  double lhs = 0.0;  // sum over (jk) != (lm)
  double rhs = 0.0;  // j != l part plus the j == l, m != k part
  bool holds = false;
};

SummationRuleReport summation_rule_check(const BipartiteState& state);

}  // namespace jsd
