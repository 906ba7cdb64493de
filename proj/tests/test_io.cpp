#include "doctest.h"
#include "oracles.hpp"

#include <filesystem>
#include <fstream>

#include "jsd/io.hpp"
#include "jsd/random.hpp"

using namespace jsd;

namespace {
ErrorCode parse_code(const std::string& text) {
  try {
    parse_state_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected jsd::Error for " << text);
  return ErrorCode::ZeroVector;
}
}  // namespace

TEST_CASE("parse_state") {
  const auto s = parse_state_text(R"({"dim_a":2,"dim_b":2,"amplitudes":[[1,0],[0,0],[0,0],[0,0]]})");
  CHECK(s == basis_state(2, 2, 0, 0));
  const auto t = parse_state_text(R"({"dim_a":1,"dim_b":2,"amplitudes":[[0,0],[0,1]]})");
  CHECK(t(0, 1) == Complex(0, 1));
  const auto n = parse_state_text(R"({"dim_a":1,"dim_b":2,"amplitudes":[[3,0],[4,0]]})", true);
  CHECK(std::abs(n(0, 0) - 0.6) < 1e-15);

  CHECK(parse_code("{") == ErrorCode::ParseError);
  CHECK(parse_code("[]") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_b":1,"amplitudes":[[1,0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_a":0,"dim_b":1,"amplitudes":[]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_a":1.5,"dim_b":1,"amplitudes":[[1,0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_a":1,"dim_b":1,"amplitudes":[[1,0,0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_a":1,"dim_b":1,"amplitudes":[["1",0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_a":1,"dim_b":1,"amplitudes":[[NaN,0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_a":1,"dim_b":1,"amplitudes":[[1e999,0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim_a":1,"dim_b":2,"amplitudes":[[1,0]]})") == ErrorCode::DimensionMismatch);
  CHECK(parse_code(R"({"dim_a":1,"dim_b":2,"amplitudes":[[1,0],[1,0]]})") == ErrorCode::NotNormalized);
}

TEST_CASE("encode round trip") {
  const auto psi = haar_random_state(3, 2, 17);
  const Json j = encode(psi);
  CHECK(parse_state(Json::parse(j.dump())) == psi);  // 17 significant digits survive the text form
  CHECK(j["amplitudes"].size() == 6);
  CHECK(j["amplitudes"][1][0].get<double>() == psi(0, 1).real());
}

TEST_CASE("load_state_file and scan csv") {
  const auto dir = std::filesystem::temp_directory_path() / "jsd_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "s.json") << encode(oracle::bell()).dump();
  }
  CHECK(load_state_file(dir / "s.json") == oracle::bell());
  CHECK_THROWS_AS(load_state_file(dir / "missing.json"), Error);

  const auto scan = extremal_scan(oracle::bell(), 7, 1);
  write_scan_csv(scan, dir / "scan.csv");
  std::ifstream in(dir / "scan.csv");
  std::string line;
  int lines = 0;
  std::getline(in, line);
  CHECK(line == "sample,diag_0,diag_1,diag_2,offdiag_1,offdiag_2");
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 7);
  std::filesystem::remove_all(dir);
}

TEST_CASE("report encoders") {
  const Json s = encode(schmidt(oracle::bell()));
  CHECK(s["rank"] == 2);
  CHECK(s["lambdas"].size() == 2);
  const Json j = encode(joint_svd(oracle::bell(), basis_state(2, 2, 0, 0), Side::TracedOverB));
  CHECK(j["side"] == "TracedOverB");
  CHECK(j["q"].size() == 2);
  const Json c = encode(inequality_chain(oracle::bell()));
  CHECK(c["tight"] == true);
}
