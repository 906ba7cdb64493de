#include "jsd/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace jsd {

namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, std::string(what) + " is not finite");
  return v;
}

Eigen::Index positive_int(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field ") + key);
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(key) + " must be an integer");
  const auto n = v.get<long long>();
  if (n < 1) throw Error(ErrorCode::ParseError, std::string(key) + " must be positive");
  return static_cast<Eigen::Index>(n);
}

Json bool_list(const std::vector<bool>& flags) {
  Json out = Json::array();
  for (bool f : flags) out.push_back(f);
  return out;
}

}  // namespace

const char* to_string(Side side) {
  return side == Side::TracedOverA ? "TracedOverA" : "TracedOverB";
}

BipartiteState parse_state(const Json& j, bool normalize) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "state must be a JSON object");
  const Eigen::Index dim_a = positive_int(j, "dim_a");
  const Eigen::Index dim_b = positive_int(j, "dim_b");
  if (!j.contains("amplitudes") || !j.at("amplitudes").is_array()) {
    throw Error(ErrorCode::ParseError, "amplitudes must be an array");
  }
  std::vector<Complex> amps;
  for (const Json& entry : j.at("amplitudes")) {
    if (!entry.is_array() || entry.size() != 2) throw Error(ErrorCode::ParseError, "amplitude must be [re, im]");
    amps.emplace_back(finite_number(entry[0], "real part"), finite_number(entry[1], "imaginary part"));
  }
  return state_from_amplitudes(dim_a, dim_b, amps, normalize);
}

BipartiteState parse_state_text(const std::string& text, bool normalize) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {  // includes numeric overflow (out_of_range)
    throw Error(ErrorCode::ParseError, e.what());
  }
  return parse_state(j, normalize);
}

BipartiteState load_state_file(const std::filesystem::path& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str(), normalize);
}

Json encode(Complex z) { return Json::array({z.real(), z.imag()}); }

Json encode(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode(v(i)));
  return out;
}

Json encode(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json encode_columns(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(encode(CVector(m.col(c))));
  return out;
}

Json encode(const RMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(encode(RVector(m.row(r).transpose())));
  return out;
}

Json encode(const BipartiteState& state) {
  return {{"dim_a", state.dim_a()}, {"dim_b", state.dim_b()}, {"amplitudes", encode(state.flat())}};
}

Json encode(const SchmidtDecomposition& dec) {
  return {{"rank", dec.rank},
          {"lambdas", encode(dec.lambdas)},
          {"basis_a", encode_columns(dec.basis_a)},
          {"basis_b", encode_columns(dec.basis_b)}};
}

Json encode(const JointSvdDecomposition& dec) {
  return {{"side", to_string(dec.side)},
          {"basis_u", encode_columns(dec.basis_u)},
          {"basis_v", encode_columns(dec.basis_v)},
          {"q", encode(dec.q)},
          {"mu", encode(dec.mu)},
          {"nu", encode(dec.nu)},
          {"dual_psi", encode_columns(dec.dual_psi)},
          {"dual_phi", encode_columns(dec.dual_phi)},
          {"degenerate_psi", bool_list(dec.degenerate_psi)},
          {"degenerate_phi", bool_list(dec.degenerate_phi)},
          {"reduction_rank", dec.reduction_rank},
          {"psi_terms", dec.psi_terms},
          {"phi_terms", dec.phi_terms}};
}

Json encode(const JointDiagDecomposition& dec) {
  return {{"side", to_string(dec.side)},
          {"right_basis", encode_columns(dec.right_basis)},
          {"left_dual_basis", encode_columns(dec.left_dual_basis)},
          {"t_basis", encode_columns(dec.t_basis)},
          {"t_dual_basis", encode_columns(dec.t_dual_basis)},
          {"delta", encode(dec.delta)},
          {"phases", encode(dec.phases)},
          {"xi", encode(dec.xi)},
          {"eta", encode(dec.eta)},
          {"condition", dec.condition}};
}

Json encode(const IdentityReport& report) {
  Json out = {{"lhs", encode(report.lhs)},
              {"rhs", encode(report.rhs)},
              {"abs_gap", report.abs_gap},
              {"tolerance", report.tolerance},
              {"holds", report.holds}};
  if (report.third_route) out["third_route"] = *report.third_route;
  return out;
}

Json encode(const SectorReport& report) {
  return {{"basis_label", report.basis_label},
          {"d", report.d},
          {"padded", report.padded},
          {"units", "squared lengths; len_* are coefficient sums, diag_*/offdiag_* are divided by d^2"},
          {"len0", report.len0},
          {"len1a", report.len1a},
          {"len1b", report.len1b},
          {"len2", report.len2},
          {"diag_0", report.diag_0},
          {"diag_1", report.diag_1},
          {"diag_2", report.diag_2},
          {"offdiag_1", report.offdiag_1},
          {"offdiag_2", report.offdiag_2},
          {"offdiag_2_closed_form", report.offdiag_2_closed_form}};
}

Json encode(const MajorizationWitness& witness) {
  return {{"party", witness.party == Party::A ? "A" : "B"},
          {"lam", encode(witness.lam)},
          {"h", encode(witness.h)},
          {"transfer", encode(witness.transfer)},
          {"majorizes", witness.majorizes}};
}

Json encode(const ChainReport& report) {
  return {{"d", report.d},
          {"off_2sec", report.off_2sec},
          {"off_2sec_bloch", report.off_2sec_bloch},
          {"closed_form_gap", report.closed_form_gap},
          {"middle", report.middle},
          {"half_concurrence_sq", report.half_concurrence_sq},
          {"schmidt_tightness_gap", report.schmidt_tightness_gap},
          {"slack", report.slack},
          {"ordered", report.ordered},
          {"bloch_above_half_concurrence", report.bloch_above_half_concurrence},
          {"tight", report.tight}};
}

Json encode(const SummationRuleReport& report) {
  return {{"lhs", report.lhs}, {"rhs", report.rhs}, {"holds", report.holds}};
}

Json encode(const ScanReport& report) {
  return {{"reference", encode(report.reference)},
          {"half_concurrence_sq", report.half_concurrence_sq},
          {"samples", report.rows.size()},
          {"max_diag_2", report.max_diag_2},
          {"min_offdiag_2", report.min_offdiag_2},
          {"violations", report.violations},
          {"tolerance", report.tolerance}};
}

Json encode(const OptimizeResult& result) {
  return {{"best_value", result.best_value},
          {"schmidt_reference", result.schmidt_reference},
          {"gap", result.schmidt_reference - result.best_value},
          {"sweeps", result.sweeps},
          {"iteration_limit", result.iteration_limit},
          {"u_a", encode_columns(result.u_a)},
          {"u_b", encode_columns(result.u_b)}};
}

void write_scan_csv(const ScanReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << "sample,diag_0,diag_1,diag_2,offdiag_1,offdiag_2\n";
  out << std::setprecision(17);
  for (const auto& row : report.rows) {
    out << row.sample << ',' << row.diag_0 << ',' << row.diag_1 << ',' << row.diag_2 << ',' << row.offdiag_1
        << ',' << row.offdiag_2 << '\n';
  }
}

}  // namespace jsd
