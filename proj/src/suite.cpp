#include "jsd/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "jsd/random.hpp"

namespace jsd {

namespace {

std::uint64_t case_seed(std::uint64_t seed, int criterion, Eigen::Index d, std::int64_t index) {
  const auto base = derive_seed(derive_seed(seed, static_cast<std::uint64_t>(criterion)), static_cast<std::uint64_t>(d));
  return derive_seed(base, static_cast<std::uint64_t>(index));
}

BipartiteState random_state(std::uint64_t seed, int criterion, Eigen::Index d, std::int64_t index) {
  return haar_random_state(d, d, case_seed(seed, criterion, d, index));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

BipartiteState bell_state() {
  const std::vector<Complex> amps{1.0, 0.0, 0.0, 1.0};
  return state_from_amplitudes(2, 2, amps, true);
}

CriterionResult timed(int id, std::string title, const std::function<void(CriterionResult&)>& body) {
  CriterionResult result;
  result.id = id;
  result.title = std::move(title);
  const auto start = std::chrono::steady_clock::now();
  body(result);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Json dims_json(const std::vector<Eigen::Index>& dims) {
  Json out = Json::array();
  for (auto d : dims) out.push_back(d);
  return out;
}

}  // namespace

SuiteConfig SuiteConfig::quick(std::uint64_t seed) {
  SuiteConfig c;
  c.seed = seed;
  c.decomposition_dims = {2, 3, 4, 6, 8};
  c.pairs_per_dim = 10;
  c.purity_dims = {2, 3, 4};
  c.tuples_per_dim = 20;
  c.bloch_dims = {2, 3, 4};
  c.bloch_states_per_dim = 3;
  c.local_unitary_pairs = 10;
  c.scan_dims = {2, 3, 4};
  c.scan_states_per_dim = 3;
  c.scan_samples = 100;
  c.optimizer_restarts = 3;
  c.optimizer_sweeps = 400;
  c.appendix_dims = {2, 3, 4};
  c.appendix_states_per_dim = 10;
  c.appendix_bases_per_state = 5;
  return c;
}

SuiteConfig SuiteConfig::full(std::uint64_t seed) {
  SuiteConfig c;
  c.seed = seed;
  c.decomposition_dims = {2, 3, 4, 6, 8};
  c.purity_dims = {2, 3, 4};
  c.bloch_dims = {2, 3, 4, 6, 8};
  c.scan_dims = {2, 3, 4};
  c.appendix_dims = {2, 3, 4};
  return c;
}

void CheckTally::add(double gap) {
  ++evaluated;
  if (!(gap <= tolerance)) ++violations;  // NaN counts as a violation
  if (std::isnan(gap) || gap > worst) worst = gap;
}

void CheckTally::add_flag(bool ok) { add(ok ? 0.0 : 1.0); }

bool CriterionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.passed(); });
}

CriterionResult criterion_schmidt(const SuiteConfig& config) {
  return timed(1, "Schmidt round trip and purity relation", [&](CriterionResult& r) {
    CheckTally recon{"schmidt_reconstruction", 1e-9};
    CheckTally purity{"purity_a_equals_b", 1e-10};
    CheckTally lambda_sum{"lambda_sum", 1e-10};
    for (auto d : config.decomposition_dims) {
      for (int i = 0; i < config.pairs_per_dim; ++i) {
        const BipartiteState s = random_state(config.seed, 1, d, i);
        const SchmidtDecomposition dec = schmidt(s);
        recon.add(max_abs_diff(reconstruct(dec), s.amplitudes()));
        const IdentityReport p = check_purity_equal(s);
        purity.add(std::abs(p.lhs - p.rhs));
        lambda_sum.add(std::abs(dec.lambdas.sum() - 1.0));
      }
    }
    r.checks = {recon, purity, lambda_sum};
    r.metrics = {{"dims", dims_json(config.decomposition_dims)}, {"states_per_dim", config.pairs_per_dim}};
  });
}

CriterionResult criterion_joint_svd(const SuiteConfig& config) {
  return timed(2, "SVD-based joint decomposition", [&](CriterionResult& r) {
    CheckTally duality{"svd_duality_residual", 1e-9};
    CheckTally weights{"weight_sums", 1e-10};
    CheckTally overlap_check{"sum_q_overlap", 1e-9};
    CheckTally recon{"svd_reconstruction", 1e-9};
    CheckTally rank{"nonzero_q_equals_reduction_rank", 0.0};
    for (auto d : config.decomposition_dims) {
      for (int i = 0; i < config.pairs_per_dim; ++i) {
        const BipartiteState psi = random_state(config.seed, 2, d, 2 * i);
        const BipartiteState phi = random_state(config.seed, 2, d, 2 * i + 1);
        for (Side side : {Side::TracedOverB, Side::TracedOverA}) {
          const JointSvdDecomposition dec = joint_svd(psi, phi, side);
          duality.add(svd_duality_residual(dec));
          weights.add(std::max(std::abs(dec.mu.sum() - 1.0), std::abs(dec.nu.sum() - 1.0)));
          overlap_check.add(std::abs(svd_overlap(dec) - overlap(psi, phi)));
          const auto [rpsi, rphi] = reconstruct(dec);
          recon.add(std::max(max_abs_diff(rpsi, psi.amplitudes()), max_abs_diff(rphi, phi.amplitudes())));
          const RVector sv = Eigen::JacobiSVD<CMatrix>(reduce_rank1(psi, phi, side).matrix).singularValues();
          const auto expected = (sv.array() >= construction_tol(d)).count();
          rank.add(std::abs(static_cast<double>(expected - dec.reduction_rank)));
        }
      }
    }
    r.checks = {duality, weights, overlap_check, recon, rank};
    r.metrics = {{"dims", dims_json(config.decomposition_dims)}, {"pairs_per_dim", config.pairs_per_dim}};
  });
}

CriterionResult criterion_joint_diag(const SuiteConfig& config) {
  return timed(3, "Diagonalization-based joint decomposition", [&](CriterionResult& r) {
    CheckTally duality{"dual_basis_residual", 1e-8};
    CheckTally weights{"sqrt_xi_eta_equals_delta", 1e-8};
    CheckTally recon{"diag_reconstruction", 1e-8};
    CheckTally spectra{"tr_a_tr_b_spectra_agree", 1e-8};
    CheckTally acceptance{"gate_acceptance_fraction_at_least_0.9", 0.0};
    CheckTally defective{"defective_case_rejected", 0.0};
    std::int64_t attempted = 0;
    std::int64_t accepted = 0;
    for (auto d : config.decomposition_dims) {
      for (int i = 0; i < config.pairs_per_dim; ++i) {
        const BipartiteState psi = random_state(config.seed, 3, d, 2 * i);
        const BipartiteState phi = random_state(config.seed, 3, d, 2 * i + 1);
        for (Side side : {Side::TracedOverB, Side::TracedOverA}) {
          ++attempted;
          JointDiagDecomposition dec;
          try {
            dec = joint_diag(psi, phi, side);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::NotDiagonalizable) throw;
            continue;
          }
          ++accepted;
          duality.add(diag_duality_residual(dec));
          double w = 0.0;
          for (Eigen::Index j = 0; j < dec.delta.size(); ++j)
            w = std::max(w, std::abs(std::sqrt(dec.xi(j) * dec.eta(j)) - dec.delta(j)));
          weights.add(w);
          const auto [rpsi, rphi] = reconstruct(dec);
          recon.add(std::max(max_abs_diff(rpsi, psi.amplitudes()), max_abs_diff(rphi, phi.amplitudes())));
          const double tol = construction_tol(d);
          spectra.add(multiset_distance(nonzero_eigenvalues(reduce_rank1(psi, phi, Side::TracedOverA).matrix, tol),
                                        nonzero_eigenvalues(reduce_rank1(psi, phi, Side::TracedOverB).matrix, tol)));
        }
      }
    }
    acceptance.add_flag(attempted > 0 && static_cast<double>(accepted) >= 0.9 * static_cast<double>(attempted));
    bool rejected = false;
    try {
      joint_diag(basis_state(2, 2, 0, 0), basis_state(2, 2, 1, 0), Side::TracedOverB);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::NotDiagonalizable;
    }
    defective.add_flag(rejected);
    r.checks = {duality, weights, recon, spectra, acceptance, defective};
    r.metrics = {{"attempted", attempted}, {"accepted", accepted}};
  });
}

CriterionResult criterion_purity(const SuiteConfig& config) {
  return timed(4, "Generalized purity identities", [&](CriterionResult& r) {
    CheckTally square{"reduction_square_identity", 1e-10};
    CheckTally four{"four_state_identity", 1e-10};
    CheckTally cross{"cross_purity_three_way", 1e-9};
    for (auto d : config.purity_dims) {
      for (int i = 0; i < config.tuples_per_dim; ++i) {
        const BipartiteState psi = random_state(config.seed, 4, d, 4 * i);
        const BipartiteState phi = random_state(config.seed, 4, d, 4 * i + 1);
        const BipartiteState chi = random_state(config.seed, 4, d, 4 * i + 2);
        const BipartiteState zeta = random_state(config.seed, 4, d, 4 * i + 3);
        square.add(reduction_square_identity(psi, phi).abs_gap);
        four.add(four_state_identity(psi, phi, chi, zeta).abs_gap);
        cross.add(cross_purity_identity(psi, phi).abs_gap);
      }
    }
    r.checks = {square, four, cross};
    r.metrics = {{"dims", dims_json(config.purity_dims)}, {"tuples_per_dim", config.tuples_per_dim}};
  });
}

CriterionResult criterion_bloch_budget(const SuiteConfig& config) {
  return timed(5, "Bloch sector budget and local-unitary invariance", [&](CriterionResult& r) {
    CheckTally projector_budget{"projector_sector_sum", 1e-8};
    CheckTally rank1_budget{"rank1_total_length", 1e-8};
    CheckTally invariance{"sector_lengths_local_unitary_invariant", 1e-8};
    for (auto d : config.bloch_dims) {
      const HermitianBasis basis = gell_mann_basis(d);
      const double d2 = static_cast<double>(d * d);
      for (int i = 0; i < config.bloch_states_per_dim; ++i) {
        const BipartiteState psi = random_state(config.seed, 5, d, 2 * i);
        const BipartiteState phi = random_state(config.seed, 5, d, 2 * i + 1);
        const SectorLengths base = sector_lengths(bloch_expand_rank1(psi, psi, basis));
        projector_budget.add(std::abs(base.total() - d2));
        rank1_budget.add(std::abs(sector_lengths(bloch_expand_rank1(psi, phi, basis)).total() - d2));
        for (int k = 0; k < config.local_unitary_pairs; ++k) {
          const auto stream = static_cast<std::int64_t>(i) * 1000 + k;
          const CMatrix u_a = haar_random_unitary(d, case_seed(config.seed, 50, d, 2 * stream));
          const CMatrix u_b = haar_random_unitary(d, case_seed(config.seed, 50, d, 2 * stream + 1));
          const BipartiteState rotated = apply_local(psi, u_a, u_b);
          const SectorLengths s = sector_lengths(bloch_expand_rank1(rotated, rotated, basis));
          invariance.add(std::max({std::abs(s.len1a - base.len1a), std::abs(s.len1b - base.len1b),
                                   std::abs(s.len2 - base.len2)}));
        }
      }
    }
    r.checks = {projector_budget, rank1_budget, invariance};
    r.metrics = {{"dims", dims_json(config.bloch_dims)},
                 {"states_per_dim", config.bloch_states_per_dim},
                 {"local_unitary_pairs", config.local_unitary_pairs}};
  });
}

CriterionResult criterion_schmidt_structure(const SuiteConfig& config) {
  return timed(6, "Schmidt-basis sector structure", [&](CriterionResult& r) {
    CheckTally off1{"schmidt_offdiag_1_zero", 1e-9};
    CheckTally off2{"schmidt_offdiag_2_half_concurrence", 1e-8};
    CheckTally family{"schmidt_1sector_only_diagonal_family", 1e-9};
    CheckTally bell_sectors{"bell_sectors_1_0_0_3", 1e-10};
    CheckTally bell_off{"bell_offdiag_2_half", 1e-10};
    for (auto d : config.bloch_dims) {
      const HermitianBasis basis = gell_mann_basis(d);
      for (int i = 0; i < config.bloch_states_per_dim; ++i) {
        const BipartiteState s = random_state(config.seed, 6, d, i);
        const BipartiteState schmidt_form = to_schmidt_basis(s);
        const SectorReport rep = sector_contributions(schmidt_form, basis, "schmidt");
        off1.add(rep.offdiag_1);
        off2.add(std::abs(rep.offdiag_2 - 0.5 * concurrence_sq(s)));
        const BlochExpansion x = bloch_expand_rank1(schmidt_form, schmidt_form, basis);
        double worst = 0.0;
        for (Eigen::Index j = 1; j < basis.size(); ++j) {
          if (basis.families[static_cast<std::size_t>(j)] == GellMannFamily::Diagonal) continue;
          worst = std::max({worst, std::abs(x.coeffs(j, 0)), std::abs(x.coeffs(0, j))});
        }
        family.add(worst);
      }
    }
    const SectorReport bell = sector_contributions(bell_state());
    bell_sectors.add(std::max({std::abs(bell.len0 - 1.0), std::abs(bell.len1a), std::abs(bell.len1b),
                               std::abs(bell.len2 - 3.0)}));
    bell_off.add(std::abs(bell.offdiag_2 - 0.5));
    r.checks = {off1, off2, family, bell_sectors, bell_off};
    r.metrics = {{"bell", encode(bell)}};
  });
}

CriterionResult criterion_extremality(const SuiteConfig& config) {
  return timed(7, "Extremality of the Schmidt basis for the 2-sector split", [&](CriterionResult& r) {
    CheckTally scan_violations{"scan_violations", 0.0};
    CheckTally optimizer_reach{"optimizer_reaches_schmidt_value", 1e-6};
    CheckTally optimizer_bound{"optimizer_never_exceeds_schmidt_value", 1e-8};
    std::int64_t samples = 0;
    for (auto d : config.scan_dims) {
      for (int i = 0; i < config.scan_states_per_dim; ++i) {
        const BipartiteState s = random_state(config.seed, 7, d, i);
        const ScanReport scan = extremal_scan(s, config.scan_samples, case_seed(config.seed, 70, d, i));
        samples += static_cast<std::int64_t>(scan.rows.size());
        scan_violations.add(static_cast<double>(scan.violations));
        const OptimizeResult opt = optimize_diag_2sector(s, config.optimizer_restarts, config.optimizer_sweeps,
                                                         case_seed(config.seed, 71, d, i));
        optimizer_reach.add(std::abs(opt.best_value - opt.schmidt_reference));
        optimizer_bound.add(std::max(0.0, opt.best_value - opt.schmidt_reference));
      }
    }
    r.checks = {scan_violations, optimizer_reach, optimizer_bound};
    r.metrics = {{"dims", dims_json(config.scan_dims)},
                 {"states_per_dim", config.scan_states_per_dim},
                 {"samples_total", samples}};
  });
}

CriterionResult criterion_appendix_chain(const SuiteConfig& config) {
  return timed(8, "Majorization and the offdiag lower-bound chain", [&](CriterionResult& r) {
    CheckTally major{"lambda_majorizes_h", 0.0};
    CheckTally stochastic{"transfer_doubly_stochastic", 1e-10};
    CheckTally transfer_map{"h_equals_transfer_lambda", 1e-9};
    CheckTally schur{"s2_lambda_at_most_s2_h", 1e-12};
    CheckTally closed_form{"incoherent_closed_form_matches_bloch_offdiag_2", 1e-8};
    CheckTally chain{"chain_ordered", 0.0};
    CheckTally tight{"chain_tight_in_schmidt_basis", 1e-9};
    CheckTally rule{"summation_rule", 1e-12};
    for (auto d : config.appendix_dims) {
      for (int i = 0; i < config.appendix_states_per_dim; ++i) {
        const BipartiteState base = random_state(config.seed, 8, d, i);
        for (int b = 0; b < config.appendix_bases_per_state; ++b) {
          const auto stream = static_cast<std::int64_t>(i) * 1000 + b;
          const CMatrix u_a = haar_random_unitary(d, case_seed(config.seed, 80, d, 2 * stream));
          const CMatrix u_b = haar_random_unitary(d, case_seed(config.seed, 80, d, 2 * stream + 1));
          const BipartiteState s = apply_local(base, u_a, u_b);
          for (Party party : {Party::A, Party::B}) {
            const MajorizationWitness w = majorization_witness(s, party);
            major.add_flag(w.majorizes);
            stochastic.add(doubly_stochastic_residual(w.transfer));
            transfer_map.add((w.transfer * w.lam - w.h).cwiseAbs().maxCoeff());
            schur.add(std::max(0.0, elementary_symmetric_2(w.lam) - elementary_symmetric_2(w.h)));
          }
          const ChainReport c = inequality_chain(s);
          closed_form.add(c.closed_form_gap);
          chain.add_flag(c.ordered && c.bloch_above_half_concurrence);
          tight.add(std::abs(c.schmidt_tightness_gap));
          rule.add(std::abs(summation_rule_check(s).lhs - summation_rule_check(s).rhs));
        }
      }
    }
    r.checks = {major, stochastic, transfer_map, schur, closed_form, chain, tight, rule};
    r.metrics = {{"dims", dims_json(config.appendix_dims)},
                 {"states_per_dim", config.appendix_states_per_dim},
                 {"bases_per_state", config.appendix_bases_per_state}};
  });
}

std::vector<CriterionResult> run_suite(const SuiteConfig& config) {
  return {criterion_schmidt(config),        criterion_joint_svd(config),
          criterion_joint_diag(config),     criterion_purity(config),
          criterion_bloch_budget(config),   criterion_schmidt_structure(config),
          criterion_extremality(config),    criterion_appendix_chain(config)};
}

Json encode(const CriterionResult& result, bool include_timing) {
  Json checks = Json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name},
                      {"worst", c.worst},
                      {"tolerance", c.tolerance},
                      {"evaluated", c.evaluated},
                      {"violations", c.violations}});
  }
  Json out = {{"id", result.id},
              {"title", result.title},
              {"passed", result.passed()},
              {"checks", checks},
              {"metrics", result.metrics}};
  if (include_timing) out["seconds"] = result.seconds;
  return out;
}

Json failures_of(const CriterionResult& result) {
  Json out = Json::array();
  for (const auto& c : result.checks) {
    if (!c.passed()) out.push_back({{"name", c.name}, {"gap", c.worst}, {"tolerance", c.tolerance}});
  }
  return out;
}

}  // namespace jsd
