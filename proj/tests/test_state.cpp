#include "doctest.h"
#include "oracles.hpp"

#include <vector>

#include "jsd/random.hpp"
#include "jsd/state.hpp"

using namespace jsd;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected jsd::Error");
  return ErrorCode::ParseError;
}
}  // namespace

TEST_CASE("state_from_amplitudes") {
  std::vector<Complex> a{1, 0, 0, 0};
  const BipartiteState s = state_from_amplitudes(2, 2, a, false);
  CHECK(s == basis_state(2, 2, 0, 0));

  std::vector<Complex> b{1, 0, 0, 1};
  const BipartiteState bell = state_from_amplitudes(2, 2, b, true);
  CHECK(std::abs(bell(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(bell(1, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);

  std::vector<Complex> five{1, 0, 0, 0, 0};
  CHECK(code_of([&] { state_from_amplitudes(2, 2, five, false); }) == ErrorCode::DimensionMismatch);
  std::vector<Complex> zero(4, 0.0);
  CHECK(code_of([&] { state_from_amplitudes(2, 2, zero, true); }) == ErrorCode::ZeroVector);
  CHECK(code_of([&] { state_from_amplitudes(2, 2, b, false); }) == ErrorCode::NotNormalized);
  // off by 1e-11 in norm^2: still rejected without normalize
  std::vector<Complex> near{std::sqrt(1.0 + 1e-11), 0, 0, 0};
  CHECK(code_of([&] { state_from_amplitudes(2, 2, near, false); }) == ErrorCode::NotNormalized);
  // flat order is j*dB + k
  std::vector<Complex> c{0, 1, 0, 0, 0, 0};
  CHECK(std::abs(state_from_amplitudes(2, 3, c, false)(0, 1) - 1.0) == 0.0);
}

TEST_CASE("reduce_rank1 and overlap") {
  const auto bell = oracle::bell();
  const auto s00 = basis_state(2, 2, 0, 0), s01 = basis_state(2, 2, 0, 1), s11 = basis_state(2, 2, 1, 1);

  CHECK(oracle::max_abs(reduce_rank1(bell, bell, Side::TracedOverB).matrix - 0.5 * CMatrix::Identity(2, 2)) < 1e-15);
  CHECK(oracle::max_abs(reduce_rank1(s00, s01, Side::TracedOverB).matrix) == 0.0);
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 1.0 / std::sqrt(2.0);
  CHECK(oracle::max_abs(reduce_rank1(bell, s00, Side::TracedOverB).matrix - expect) < 1e-15);

  CHECK(std::abs(overlap(bell, bell) - 1.0) < 1e-15);
  CHECK(std::abs(overlap(s00, s11)) == 0.0);
  CHECK(std::abs(overlap(bell, s00) - 1.0 / std::sqrt(2.0)) < 1e-15);

  CHECK(code_of([&] { reduce_rank1(bell, basis_state(2, 3, 0, 0), Side::TracedOverB); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { overlap(bell, basis_state(3, 2, 0, 0)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("reductions match brute-force partial traces") {
  for (Eigen::Index da : {1, 2, 3, 4}) {
    for (Eigen::Index db : {1, 2, 3, 5}) {
      const auto psi = haar_random_state(da, db, derive_seed(11, da * 10 + db));
      const auto phi = haar_random_state(da, db, derive_seed(12, da * 10 + db));
      const CMatrix mb = reduce_rank1(psi, phi, Side::TracedOverB).matrix;
      const CMatrix ma = reduce_rank1(psi, phi, Side::TracedOverA).matrix;
      CHECK(oracle::max_abs(mb - oracle::tr_b(psi, phi)) < 1e-14);
      CHECK(oracle::max_abs(ma - oracle::tr_a(psi, phi)) < 1e-14);
      CHECK(std::abs(mb.trace() - overlap(psi, phi)) < 1e-10);
      CHECK(std::abs(ma.trace() - overlap(psi, phi)) < 1e-10);
      // reduced density matrices: Hermitian PSD, trace 1
      const CMatrix rho = reduce_rank1(psi, psi, Side::TracedOverB).matrix;
      CHECK(oracle::max_abs(rho - rho.adjoint()) < 1e-10);
      CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
      CHECK(oracle::hermitian_eigenvalues(rho).minCoeff() > -1e-10);
    }
  }
}

TEST_CASE("apply_local") {
  const auto psi = haar_random_state(3, 2, 5);
  CHECK(apply_local(psi, CMatrix::Identity(3, 3), CMatrix::Identity(2, 2)) == psi);

  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto out = apply_local(basis_state(2, 2, 0, 0), h, CMatrix::Identity(2, 2));
  CHECK(std::abs(out(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(out(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(out(0, 1)) + std::abs(out(1, 1)) == 0.0);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto st = haar_random_state(3, 4, s);
    const auto r = apply_local(st, haar_random_unitary(3, s + 100), haar_random_unitary(4, s + 200));
    CHECK(std::abs(r.flat().norm() - 1.0) < 1e-12);
    // grid becomes u_a A u_b^T: same as kron(u_a, u_b) on the flat vector
    const CMatrix ua = haar_random_unitary(3, s + 100), ub = haar_random_unitary(4, s + 200);
    CHECK(oracle::max_abs(r.flat() - oracle::kron(ua, ub) * st.flat()) < 1e-12);
  }

  CMatrix not_unitary = CMatrix::Identity(2, 2);
  not_unitary(0, 1) = 1e-6;
  CHECK(code_of([&] { apply_local(psi, CMatrix::Identity(3, 3), not_unitary); }) == ErrorCode::NotUnitary);
  CHECK(code_of([&] { apply_local(psi, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("pad_to_square") {
  const auto psi = haar_random_state(2, 4, 3);
  const auto p = pad_to_square(psi);
  CHECK(p.dim_a() == 4);
  CHECK(p.dim_b() == 4);
  CHECK(oracle::max_abs(p.amplitudes().topRows(2) - psi.amplitudes()) == 0.0);
  CHECK(oracle::max_abs(p.amplitudes().bottomRows(2)) == 0.0);
  CHECK(pad_to_square(oracle::bell()) == oracle::bell());
}

TEST_CASE("state_from_grid rejects non-finite values") {
  CMatrix g = CMatrix::Zero(2, 2);
  g(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { state_from_grid(g); }) == ErrorCode::ParseError);
  g(0, 0) = std::numeric_limits<double>::infinity();
  CHECK(code_of([&] { state_from_grid(g); }) == ErrorCode::ParseError);
}
