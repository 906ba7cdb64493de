// jsd: command-line front end for the joint Schmidt decomposition library.
//
// Every subcommand prints a JSON run report on stdout:
//   {"command", "inputs", "seed", "results", "failures"[, "timestamp"]}
// Exit status: 0 when failures is empty, 1 when any check exceeded its
// tolerance, 2 on input errors.

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jsd/bloch.hpp"
#include "jsd/decomp.hpp"
#include "jsd/io.hpp"
#include "jsd/majorization.hpp"
#include "jsd/purity.hpp"
#include "jsd/random.hpp"
#include "jsd/suite.hpp"

namespace {

using jsd::Json;

struct CommonOptions {
  std::uint64_t seed = 7;
  std::optional<double> tol;
  bool no_timestamp = false;
  bool strict = false;
};

class RunReport {
 public:
  RunReport(std::string command, const CommonOptions& opts) : opts_(opts) {
    json_ = {{"command", std::move(command)}, {"inputs", Json::array()}, {"seed", opts.seed}};
    json_["results"] = Json::object();
    json_["failures"] = Json::array();
  }

  void input(const std::string& what) { json_["inputs"].push_back(what); }
  Json& results() { return json_["results"]; }

  void check(const std::string& name, double gap, double tolerance) {
    if (!(gap <= tolerance)) json_["failures"].push_back({{"name", name}, {"gap", gap}, {"tolerance", tolerance}});
  }
  void check_flag(const std::string& name, bool ok) { check(name, ok ? 0.0 : 1.0, 0.0); }
  void fail(const Json& entry) { json_["failures"].push_back(entry); }

  int emit() {
    if (!opts_.no_timestamp) json_["timestamp"] = utc_now();
    std::cout << json_.dump(2) << std::endl;
    return json_["failures"].empty() ? 0 : 1;
  }

 private:
  static std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  const CommonOptions& opts_;
  Json json_;
};

Json error_entry(const jsd::Error& e) {
  return {{"code", std::string(jsd::to_string(e.code()))}, {"message", e.what()}};
}

double tol_or(const CommonOptions& opts, double fallback) { return opts.tol.value_or(fallback); }

double max_abs_diff(const jsd::CMatrix& a, const jsd::CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::vector<jsd::BipartiteState> random_states(int count, const std::vector<long long>& dims, std::uint64_t seed) {
  std::vector<jsd::BipartiteState> out;
  for (int i = 0; i < count; ++i)
    out.push_back(jsd::haar_random_state(dims.at(0), dims.at(1), jsd::derive_seed(seed, static_cast<std::uint64_t>(i))));
  return out;
}

// ---------------------------------------------------------------- schmidt

int cmd_schmidt(const std::string& file, const CommonOptions& opts) {
  RunReport report("schmidt", opts);
  report.input(file);
  const jsd::BipartiteState state = jsd::load_state_file(file);
  const jsd::SchmidtDecomposition dec = jsd::schmidt(state);
  const double err = max_abs_diff(jsd::reconstruct(dec), state.amplitudes());
  const jsd::IdentityReport purity = jsd::check_purity_equal(state, tol_or(opts, jsd::kPurityTol));
  report.results() = jsd::encode(dec);
  report.results()["reconstruction_error"] = err;
  report.results()["purity"] = jsd::encode(purity);
  report.check("schmidt_reconstruction", err, tol_or(opts, 1e-9));
  report.check("purity_a_equals_b", purity.abs_gap, purity.tolerance);
  return report.emit();
}

// ---------------------------------------------------------------- joint

void add_svd(RunReport& report, const jsd::BipartiteState& psi, const jsd::BipartiteState& phi,
             const jsd::JointSvdDecomposition& dec, const CommonOptions& opts) {
  const auto [rpsi, rphi] = jsd::reconstruct(dec);
  const double duality = jsd::svd_duality_residual(dec);
  const double overlap_gap = std::abs(jsd::svd_overlap(dec) - jsd::overlap(psi, phi));
  const double err = std::max(max_abs_diff(rpsi, psi.amplitudes()), max_abs_diff(rphi, phi.amplitudes()));
  const double wsum = std::max(std::abs(dec.mu.sum() - 1.0), std::abs(dec.nu.sum() - 1.0));
  Json& r = report.results();
  r["svd"] = jsd::encode(dec);
  r["duality_residual"] = duality;
  r["overlap_gap"] = overlap_gap;
  r["reconstruction_error"] = err;
  r["weight_sum_gap"] = wsum;
  const double tol = tol_or(opts, 1e-9);
  report.check("svd_duality_residual", duality, tol);
  report.check("sum_q_overlap", overlap_gap, tol);
  report.check("svd_reconstruction", err, tol);
  report.check("weight_sums", wsum, opts.tol.value_or(1e-10));
}

int cmd_joint(const std::string& psi_file, const std::string& phi_file, const std::string& method,
              const std::string& side_name, const CommonOptions& opts) {
  RunReport report("joint", opts);
  report.input(psi_file);
  report.input(phi_file);
  const jsd::BipartiteState psi = jsd::load_state_file(psi_file);
  const jsd::BipartiteState phi = jsd::load_state_file(phi_file);
  const jsd::Side side = side_name == "A" ? jsd::Side::TracedOverA : jsd::Side::TracedOverB;
  report.results()["method"] = method;
  report.results()["overlap"] = jsd::encode(jsd::overlap(psi, phi));

  try {
    if (method == "svd") {
      report.results()["branch"] = side == jsd::Side::TracedOverB ? "SvdOnB" : "SvdOnA";
      add_svd(report, psi, phi, jsd::joint_svd(psi, phi, side), opts);
    } else if (method == "diag") {
      const jsd::JointDiagDecomposition dec = jsd::joint_diag(psi, phi, side);
      const auto [rpsi, rphi] = jsd::reconstruct(dec);
      const double duality = jsd::diag_duality_residual(dec);
      const double err = std::max(max_abs_diff(rpsi, psi.amplitudes()), max_abs_diff(rphi, phi.amplitudes()));
      double weight_gap = 0.0;
      for (Eigen::Index j = 0; j < dec.delta.size(); ++j)
        weight_gap = std::max(weight_gap, std::abs(std::sqrt(dec.xi(j) * dec.eta(j)) - dec.delta(j)));
      Json& r = report.results();
      r["diag"] = jsd::encode(dec);
      r["duality_residual"] = duality;
      r["weight_gap"] = weight_gap;
      r["reconstruction_error"] = err;
      const double tol = tol_or(opts, 1e-8);
      report.check("dual_basis_residual", duality, tol);
      report.check("sqrt_xi_eta_equals_delta", weight_gap, tol);
      report.check("diag_reconstruction", err, tol);
    } else {
      const jsd::JointDecompositionResult res = jsd::joint_decompose(psi, phi);
      report.results()["branch"] = jsd::to_string(res.kind);
      if (res.svd) {
        add_svd(report, psi, phi, *res.svd, opts);
      } else {
        report.results()["schmidt_psi"] = jsd::encode(*res.schmidt_psi);
        report.results()["schmidt_phi"] = jsd::encode(*res.schmidt_phi);
        const double tol = tol_or(opts, 1e-10);
        // Disjoint support: the overlap and the marginal overlap both vanish.
        report.check("overlap_vanishes", std::abs(jsd::overlap(psi, phi)), tol);
        const jsd::CMatrix rho_b_psi = jsd::reduce_rank1(psi, psi, jsd::Side::TracedOverA).matrix;
        const jsd::CMatrix rho_b_phi = jsd::reduce_rank1(phi, phi, jsd::Side::TracedOverA).matrix;
        report.check("local_states_orthogonal", std::abs(jsd::trace_of_product(rho_b_psi, rho_b_phi)), tol);
      }
    }
  } catch (const jsd::Error& e) {
    if (e.code() != jsd::ErrorCode::NotDiagonalizable && e.code() != jsd::ErrorCode::ZeroReduction) throw;
    report.results()["error"] = error_entry(e);
    if (opts.strict) report.fail({{"name", std::string(jsd::to_string(e.code()))}, {"message", e.what()}});
  }
  return report.emit();
}

// ---------------------------------------------------------------- purity-check

int cmd_purity(const std::vector<std::string>& files, int random_count, const std::vector<long long>& dims,
               const CommonOptions& opts) {
  RunReport report("purity-check", opts);
  std::vector<jsd::BipartiteState> states;
  if (random_count > 0) {
    report.input("random " + std::to_string(random_count) + " tuples of 4, dims " + std::to_string(dims.at(0)) +
                 "x" + std::to_string(dims.at(1)));
    states = random_states(4 * random_count, dims, opts.seed);
  } else {
    for (const auto& f : files) {
      report.input(f);
      states.push_back(jsd::load_state_file(f));
    }
  }
  if (states.empty()) throw jsd::Error(jsd::ErrorCode::ParseError, "no input states");

  const double tol3 = tol_or(opts, jsd::kPurityTol);
  const double tol10 = tol_or(opts, jsd::kPurityTol);
  const double tol11 = tol_or(opts, jsd::kCrossPurityTol);
  double worst3 = 0.0, worst10 = 0.0, worst11 = 0.0, worst12 = 0.0;
  Json cases = Json::array();

  const std::size_t group = random_count > 0 ? 4 : states.size();
  for (std::size_t start = 0; start + group <= states.size(); start += group) {
    Json entry = Json::object();
    Json eq3 = Json::array();
    for (std::size_t i = start; i < start + group; ++i) {
      const auto r = jsd::check_purity_equal(states[i], tol3);
      worst3 = std::max(worst3, r.abs_gap);
      eq3.push_back(jsd::encode(r));
    }
    entry["purity"] = eq3;
    if (group >= 2) {
      const auto r10 = jsd::reduction_square_identity(states[start], states[start + 1], tol10);
      const auto r11 = jsd::cross_purity_identity(states[start], states[start + 1], tol11);
      worst10 = std::max(worst10, r10.abs_gap);
      worst11 = std::max(worst11, r11.abs_gap);
      entry["reduction_square"] = jsd::encode(r10);
      entry["cross_purity"] = jsd::encode(r11);
    }
    if (group >= 4) {
      const auto r12 = jsd::four_state_identity(states[start], states[start + 1], states[start + 2],
                                                states[start + 3], tol10);
      worst12 = std::max(worst12, r12.abs_gap);
      entry["four_state"] = jsd::encode(r12);
    }
    cases.push_back(entry);
  }
  Json& r = report.results();
  r["worst_gaps"] = {{"purity", worst3}, {"reduction_square", worst10}, {"cross_purity", worst11},
                     {"four_state", worst12}};
  // Random batches are summarized only; explicit files get the per-case detail.
  if (random_count == 0) r["cases"] = cases;
  r["tuples"] = cases.size();
  report.check("purity_a_equals_b", worst3, tol3);
  report.check("reduction_square_identity", worst10, tol10);
  report.check("cross_purity_three_way", worst11, tol11);
  report.check("four_state_identity", worst12, tol10);
  return report.emit();
}

// ---------------------------------------------------------------- bloch-sectors

int cmd_bloch(const std::string& file, std::int64_t scan, bool optimize, const std::string& csv, int restarts,
              int iters, const CommonOptions& opts) {
  RunReport report("bloch-sectors", opts);
  report.input(file);
  const jsd::BipartiteState state = jsd::load_state_file(file);
  const jsd::BipartiteState padded = jsd::pad_to_square(state);
  const auto d = padded.dim_a();
  const jsd::HermitianBasis basis = jsd::gell_mann_basis(d);

  const jsd::SectorReport current = jsd::sector_contributions(state, basis, "computational");
  const jsd::SectorReport schmidt_rep = jsd::sector_contributions(jsd::to_schmidt_basis(state), basis, "schmidt");
  const double half_c2 = 0.5 * jsd::concurrence_sq(state);
  Json& r = report.results();
  r["current"] = jsd::encode(current);
  r["schmidt"] = jsd::encode(schmidt_rep);
  r["concurrence_sq"] = 2.0 * half_c2;

  const double tol = tol_or(opts, 1e-8);
  const double budget = current.len0 + current.len1a + current.len1b + current.len2;
  report.check("sector_sum_equals_d2_purity", std::abs(budget - static_cast<double>(d * d)), tol);
  report.check("schmidt_offdiag_1_zero", schmidt_rep.offdiag_1, opts.tol.value_or(1e-9));
  report.check("schmidt_offdiag_2_half_concurrence", std::abs(schmidt_rep.offdiag_2 - half_c2), tol);
  report.check("offdiag_2_closed_form", std::abs(current.offdiag_2 - current.offdiag_2_closed_form), tol);

  if (scan > 0) {
    const jsd::ScanReport s = jsd::extremal_scan(state, scan, opts.seed);
    r["scan"] = jsd::encode(s);
    report.check("scan_violations", static_cast<double>(s.violations), 0.0);
    if (!csv.empty()) {
      jsd::write_scan_csv(s, csv);
      r["csv"] = csv;
    }
  }
  if (optimize) {
    const jsd::OptimizeResult o = jsd::optimize_diag_2sector(state, restarts, iters, opts.seed);
    r["optimize"] = jsd::encode(o);
    report.check("optimizer_reaches_schmidt_value", std::abs(o.best_value - o.schmidt_reference),
                 opts.tol.value_or(1e-6));
    report.check("optimizer_never_exceeds_schmidt_value", std::max(0.0, o.best_value - o.schmidt_reference), 1e-8);
  }
  return report.emit();
}

// ---------------------------------------------------------------- appendix-check

Json appendix_case(RunReport& report, const jsd::BipartiteState& s, const CommonOptions& opts) {
  Json entry = Json::object();
  Json witnesses = Json::array();
  for (jsd::Party party : {jsd::Party::A, jsd::Party::B}) {
    const jsd::MajorizationWitness w = jsd::majorization_witness(s, party);
    Json wj = jsd::encode(w);
    wj["s2_lambda"] = jsd::elementary_symmetric_2(w.lam);
    wj["s2_h"] = jsd::elementary_symmetric_2(w.h);
    wj["stochastic_residual"] = jsd::doubly_stochastic_residual(w.transfer);
    witnesses.push_back(wj);
    report.check_flag("lambda_majorizes_h", w.majorizes);
    report.check("transfer_doubly_stochastic", jsd::doubly_stochastic_residual(w.transfer), 1e-10);
    report.check("s2_lambda_at_most_s2_h",
                 std::max(0.0, jsd::elementary_symmetric_2(w.lam) - jsd::elementary_symmetric_2(w.h)), 1e-12);
  }
  const jsd::ChainReport chain = jsd::inequality_chain(s);
  const jsd::SummationRuleReport rule = jsd::summation_rule_check(s);
  entry["majorization"] = witnesses;
  entry["chain"] = jsd::encode(chain);
  entry["summation_rule"] = jsd::encode(rule);
  report.check("incoherent_closed_form_matches_bloch_offdiag_2", chain.closed_form_gap, tol_or(opts, 1e-8));
  report.check_flag("chain_ordered", chain.ordered && chain.bloch_above_half_concurrence);
  report.check("chain_tight_in_schmidt_basis", std::abs(chain.schmidt_tightness_gap), chain.slack);
  report.check_flag("summation_rule", rule.holds);
  return entry;
}

int cmd_appendix(const std::string& file, int random_count, const std::vector<long long>& dims,
                 const CommonOptions& opts) {
  RunReport report("appendix-check", opts);
  std::vector<jsd::BipartiteState> states;
  if (random_count > 0) {
    report.input("random " + std::to_string(random_count) + " states, dims " + std::to_string(dims.at(0)) + "x" +
                 std::to_string(dims.at(1)));
    states = random_states(random_count, dims, opts.seed);
  } else {
    report.input(file);
    states.push_back(jsd::load_state_file(file));
  }
  Json cases = Json::array();
  for (const auto& s : states) cases.push_back(appendix_case(report, s, opts));
  report.results()["cases"] = cases;
  return report.emit();
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(bool full, const CommonOptions& opts) {
  RunReport report("selftest", opts);
  report.input(full ? "full" : "quick");
  const jsd::SuiteConfig config = full ? jsd::SuiteConfig::full(opts.seed) : jsd::SuiteConfig::quick(opts.seed);
  Json criteria = Json::array();
  for (const auto& c : jsd::run_suite(config)) {
    criteria.push_back(jsd::encode(c, !opts.no_timestamp));
    for (const auto& f : jsd::failures_of(c)) {
      Json entry = f;
      entry["criterion"] = c.id;
      report.fail(entry);
    }
  }
  report.results()["criteria"] = criteria;
  return report.emit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint Schmidt-type decompositions of bipartite pure states"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", opts.seed, "64-bit seed for random inputs, scans and restarts");
    sub->add_option("--tol", opts.tol, "override the default tolerance of the primary checks");
    sub->add_flag("--no-timestamp", opts.no_timestamp, "omit the timestamp so reports are byte-stable");
  };

  std::string file, psi_file, phi_file, method = "auto", side = "B", csv;
  std::vector<std::string> files;
  std::vector<long long> dims{2, 2};
  int random_count = 0;
  std::int64_t scan = 0;
  bool optimize = false, quick = false, full = false;
  int restarts = 5, iters = 400;

  auto* schmidt_cmd = app.add_subcommand("schmidt", "standard Schmidt decomposition of one state");
  schmidt_cmd->add_option("state", file, "state JSON file")->required();
  add_common(schmidt_cmd);

  auto* joint_cmd = app.add_subcommand("joint", "joint decomposition of two states");
  joint_cmd->add_option("psi", psi_file, "first state")->required();
  joint_cmd->add_option("phi", phi_file, "second state")->required();
  joint_cmd->add_option("--method", method, "svd, diag or auto")->check(CLI::IsMember({"svd", "diag", "auto"}));
  joint_cmd->add_option("--side", side, "party traced over: A or B")->check(CLI::IsMember({"A", "B"}));
  joint_cmd->add_flag("--strict", opts.strict, "treat refused decompositions as failures");
  add_common(joint_cmd);

  auto* purity_cmd = app.add_subcommand("purity-check", "generalized purity identities");
  purity_cmd->add_option("states", files, "1, 2 or 4 state files (psi phi chi zeta)");
  purity_cmd->add_option("--random", random_count, "number of random 4-tuples");
  purity_cmd->add_option("--dims", dims, "local dimensions A B")->expected(2);
  add_common(purity_cmd);

  auto* bloch_cmd = app.add_subcommand("bloch-sectors", "Bloch sector lengths and diag/offdiag split");
  bloch_cmd->add_option("state", file, "state JSON file")->required();
  bloch_cmd->add_option("--scan", scan, "number of random local bases to sample");
  bloch_cmd->add_flag("--optimize", optimize, "maximize the diag 2-sector contribution");
  bloch_cmd->add_option("--csv", csv, "write per-sample scan rows to this path");
  bloch_cmd->add_option("--restarts", restarts, "optimizer restarts");
  bloch_cmd->add_option("--iters", iters, "optimizer sweep limit per restart");
  add_common(bloch_cmd);

  auto* appendix_cmd = app.add_subcommand("appendix-check", "majorization witness and offdiag bound chain");
  appendix_cmd->add_option("state", file, "state JSON file");
  appendix_cmd->add_option("--random", random_count, "number of random states");
  appendix_cmd->add_option("--dims", dims, "local dimensions A B")->expected(2);
  add_common(appendix_cmd);

  auto* selftest_cmd = app.add_subcommand("selftest", "run the verification suite");
  selftest_cmd->add_flag("--quick", quick, "reduced sample counts (default)");
  selftest_cmd->add_flag("--full", full, "acceptance sample counts, dimensions up to 8");
  add_common(selftest_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (schmidt_cmd->parsed()) return cmd_schmidt(file, opts);
    if (joint_cmd->parsed()) return cmd_joint(psi_file, phi_file, method, side, opts);
    if (purity_cmd->parsed()) return cmd_purity(files, random_count, dims, opts);
    if (bloch_cmd->parsed()) return cmd_bloch(file, scan, optimize, csv, restarts, iters, opts);
    if (appendix_cmd->parsed()) {
      if (file.empty() && random_count == 0) throw jsd::Error(jsd::ErrorCode::ParseError, "need a state file or --random");
      return cmd_appendix(file, random_count, dims, opts);
    }
    if (selftest_cmd->parsed()) return cmd_selftest(full && !quick, opts);
  } catch (const jsd::Error& e) {
    std::cout << Json{{"error", error_entry(e)}}.dump(2) << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}.dump(2) << std::endl;
    return 2;
  }
  return 0;
}
