#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsd/io.hpp"

namespace jsd {

/// Sizes for one run of the verification suite. `full()` uses the acceptance
/// sample counts; `quick()` is a reduced desk-scale pass.
struct SuiteConfig {
  std::uint64_t seed = 7;
  std::vector<Eigen::Index> decomposition_dims;  // criteria 1-3
  int pairs_per_dim = 100;
  std::vector<Eigen::Index> purity_dims;
  int tuples_per_dim = 100;
  std::vector<Eigen::Index> bloch_dims;  // criteria 5-6
  int bloch_states_per_dim = 20;
  int local_unitary_pairs = 50;
  std::vector<Eigen::Index> scan_dims;  // criterion 7
  int scan_states_per_dim = 20;
  int scan_samples = 500;
  int optimizer_restarts = 5;
  int optimizer_sweeps = 400;
  std::vector<Eigen::Index> appendix_dims;  // criterion 8
  int appendix_states_per_dim = 100;
  int appendix_bases_per_state = 20;

  static SuiteConfig quick(std::uint64_t seed);
  static SuiteConfig full(std::uint64_t seed);
};

/// Worst gap of one named check over all evaluated cases.
struct CheckTally {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  std::int64_t evaluated = 0;
  std::int64_t violations = 0;

  void add(double gap);
  void add_flag(bool ok);  // boolean check: gap 0 when ok, 1 otherwise
  bool passed() const { return violations == 0; }
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckTally> checks;
  Json metrics = Json::object();
  double seconds = 0.0;

  bool passed() const;
};

std::vector<CriterionResult> run_suite(const SuiteConfig& config);

/// Individual criteria, exposed so callers can time or run them separately.
CriterionResult criterion_schmidt(const SuiteConfig& config);
CriterionResult criterion_joint_svd(const SuiteConfig& config);
CriterionResult criterion_joint_diag(const SuiteConfig& config);
CriterionResult criterion_purity(const SuiteConfig& config);
CriterionResult criterion_bloch_budget(const SuiteConfig& config);
CriterionResult criterion_schmidt_structure(const SuiteConfig& config);
CriterionResult criterion_extremality(const SuiteConfig& config);
CriterionResult criterion_appendix_chain(const SuiteConfig& config);

/// {"id", "title", "passed", "checks": [...]}; timing only when requested.
Json encode(const CriterionResult& result, bool include_timing);

/// Failure entries {"name", "gap", "tolerance"} for every violated check.
Json failures_of(const CriterionResult& result);

}  // namespace jsd
