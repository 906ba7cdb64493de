#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jsd/bloch.hpp"
#include "jsd/decomp.hpp"
#include "jsd/majorization.hpp"
#include "jsd/purity.hpp"
#include "jsd/state.hpp"

namespace jsd {

using Json = nlohmann::json;

// State files: {"dim_a": int, "dim_b": int, "amplitudes": [[re, im], ...]} in
// flat j*dB + k order. Complex numbers are [re, im] pairs everywhere.

/// Throws ParseError on malformed input or non-finite numbers; the usual
/// state_from_amplitudes errors otherwise. With normalize off the amplitudes
/// must already be unit norm.
BipartiteState parse_state(const Json& j, bool normalize = false);
BipartiteState parse_state_text(const std::string& text, bool normalize = false);
BipartiteState load_state_file(const std::filesystem::path& path, bool normalize = false);

Json encode(const BipartiteState& state);
Json encode(Complex z);
Json encode(const CVector& v);
Json encode(const RVector& v);
/// Columns as a list of [re, im] vectors.
Json encode_columns(const CMatrix& m);
Json encode(const RMatrix& m);

Json encode(const SchmidtDecomposition& dec);
Json encode(const JointSvdDecomposition& dec);
Json encode(const JointDiagDecomposition& dec);
Json encode(const IdentityReport& report);
Json encode(const SectorReport& report);
Json encode(const MajorizationWitness& witness);
Json encode(const ChainReport& report);
Json encode(const SummationRuleReport& report);
/// Scan summary; per-sample rows go to CSV instead.
Json encode(const ScanReport& report);
Json encode(const OptimizeResult& result);

/// Scan rows as CSV with header sample,diag_0,diag_1,diag_2,offdiag_1,offdiag_2.
void write_scan_csv(const ScanReport& report, const std::filesystem::path& path);

const char* to_string(Side side);

}  // namespace jsd
