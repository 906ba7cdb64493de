#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "jsd/bloch.hpp"
#include "jsd/random.hpp"

namespace jsd {

namespace {

constexpr int kGridPoints = 24;
constexpr double kAngleTol = 1e-10;
constexpr double kSweepTol = 1e-15;

// Both / BothConj rotate A and B in the same plane (the second with the
// conjugate phase). Near-degenerate Schmidt weights make that joint direction
// almost flat, and single-factor moves crawl along it.
enum class Factor { A, B, Both, BothConj };

// Complex plane rotation [[c, -e^{i phi} s], [e^{-i phi} s, c]] on indices (p, q).
struct PlaneRotation {
  Eigen::Index p;
  Eigen::Index q;
  double theta;
  double phi;

  void apply_rows(CMatrix& m) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    const CVector row_p = m.row(p).transpose();
    const CVector row_q = m.row(q).transpose();
    m.row(p) = (c * row_p - e * s * row_q).transpose();
    m.row(q) = (std::conj(e) * s * row_p + c * row_q).transpose();
  }
};

class Objective {
 public:
  explicit Objective(const CMatrix& grid) : grid_(grid) {}

  double value() const { return diag_2sector_from_weights(grid_.cwiseAbs2()); }

  double trial(Factor party, const PlaneRotation& rot) const {
    CMatrix g = grid_;
    rotate(g, party, rot);
    return diag_2sector_from_weights(g.cwiseAbs2());
  }

  void commit(Factor party, const PlaneRotation& rot, CMatrix& u_a, CMatrix& u_b) {
    rotate(grid_, party, rot);
    if (party != Factor::B) rot.apply_rows(u_a);
    if (party != Factor::A) b_rotation(party, rot).apply_rows(u_b);
  }

 private:
  static PlaneRotation b_rotation(Factor party, PlaneRotation rot) {
    if (party == Factor::BothConj) rot.phi = -rot.phi;
    return rot;
  }

  // grid = u_a psi u_b^T, so a B rotation acts on the rows of the transpose.
  static void rotate(CMatrix& g, Factor party, const PlaneRotation& rot) {
    if (party != Factor::B) rot.apply_rows(g);
    if (party != Factor::A) {
      CMatrix t = g.transpose();
      b_rotation(party, rot).apply_rows(t);
      g = t.transpose();
    }
  }

  CMatrix grid_;
};

// Maximizes f on [lo, hi): coarse grid, then golden section around the best
// grid point.
double line_maximize(const std::function<double(double)>& f, double lo, double hi, double current) {
  const double step = (hi - lo) / kGridPoints;
  double best_x = current;
  double best_f = f(current);
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = lo + step * i;
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_x - step;
  double b = best_x + step;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > kAngleTol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = (a + b) / 2.0;
  return f(x) > best_f ? x : best_x;
}

struct RunResult {
  double value;
  CMatrix u_a;
  CMatrix u_b;
  std::int64_t sweeps;
  bool converged;
};

RunResult run_from(const CMatrix& start, CMatrix u_a, CMatrix u_b, int iters) {
  const Eigen::Index d = start.rows();
  Objective objective(u_a * start * u_b.transpose());
  double value = objective.value();
  std::int64_t sweeps = 0;
  bool converged = false;
  for (int sweep = 0; sweep < iters; ++sweep) {
    ++sweeps;
    const double before = value;
    for (Factor party : {Factor::A, Factor::B, Factor::Both, Factor::BothConj}) {
      for (Eigen::Index p = 0; p < d; ++p) {
        for (Eigen::Index q = p + 1; q < d; ++q) {
          PlaneRotation rot{p, q, 0.0, 0.0};
          // Alternate the mixing angle and the relative phase twice.
          for (int pass = 0; pass < 2; ++pass) {
            rot.phi = line_maximize(
                [&](double x) { return objective.trial(party, {p, q, rot.theta, x}); }, -std::numbers::pi,
                std::numbers::pi, rot.phi);
            rot.theta = line_maximize(
                [&](double x) { return objective.trial(party, {p, q, x, rot.phi}); }, -std::numbers::pi / 2,
                std::numbers::pi / 2, rot.theta);
          }
          if (objective.trial(party, rot) > value) {
            objective.commit(party, rot, u_a, u_b);
            value = objective.value();
          }
        }
      }
    }
    if (value - before < kSweepTol) {
      converged = true;
      break;
    }
  }
  return {value, std::move(u_a), std::move(u_b), sweeps, converged};
}

}  // namespace

OptimizeResult optimize_diag_2sector(const BipartiteState& state, int restarts, int iters, std::uint64_t seed) {
  if (restarts < 1 || iters < 1) throw Error(ErrorCode::InvalidDimension, "restarts and iters must be positive");
  const BipartiteState padded = pad_to_square(state);
  const Eigen::Index d = padded.dim_a();

  OptimizeResult out;
  out.schmidt_reference = diag_2sector_from_weights(to_schmidt_basis(padded).amplitudes().cwiseAbs2());
  out.best_value = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    CMatrix u_a = CMatrix::Identity(d, d);
    CMatrix u_b = CMatrix::Identity(d, d);
    if (r > 0) {
      const auto stream = static_cast<std::uint64_t>(r);
      u_a = haar_random_unitary(d, derive_seed(seed, 2 * stream));
      u_b = haar_random_unitary(d, derive_seed(seed, 2 * stream + 1));
    }
    RunResult run = run_from(padded.amplitudes(), std::move(u_a), std::move(u_b), iters);
    out.sweeps += run.sweeps;
    if (run.value > out.best_value) {
      out.best_value = run.value;
      out.u_a = std::move(run.u_a);
      out.u_b = std::move(run.u_b);
      out.iteration_limit = !run.converged;
    }
  }
  return out;
}

}  // namespace jsd
