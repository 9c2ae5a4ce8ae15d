#include "qhe/ode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {
namespace {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;
using LongC = std::complex<long double>;
using VecL = Eigen::Vector<LongC, Eigen::Dynamic>;
using MatL = Eigen::Matrix<LongC, Eigen::Dynamic, Eigen::Dynamic>;

double inf_norm(const MatC& M) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < M.cols(); ++j) row += std::abs(M(i, j));
    best = std::fmax(best, row);
  }
  return best;
}

// Weighted RMS norm of an error vector against the usual mixed tolerance.
template <typename VA, typename VB, typename VE>
double error_norm(const VA& y_old, const VB& y_new, const VE& err, double rel, double abs) {
  const Eigen::Index n = err.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale =
        abs + rel * std::fmax(static_cast<double>(std::abs(y_old[i])),
                              static_cast<double>(std::abs(y_new[i])));
    const double e = static_cast<double>(std::abs(err[i])) / scale;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

double clamp_factor(double f, double lo, double hi) { return std::fmin(hi, std::fmax(lo, f)); }

[[noreturn]] void stall(double t, const char* why) {
  throw StiffnessFailure(std::string("integration stalled at t = ") + std::to_string(t) +
                             " ps: " + why,
                         t);
}

// ---------------------------------------------------------------------------
// Explicit Dormand-Prince 5(4), FSAL, for the non-stiff path.
// ---------------------------------------------------------------------------
struct Dopri5 {
  const MatC& M;
  double rel, abs;
  std::size_t max_steps;
  OdeStats* stats;

  // Advances y from t0 to t1 exactly, adapting h; k1 is the FSAL derivative
  // cache (M*y), kept valid across calls.
  void advance(VecC& y, VecC& k1, double t0, double t1, double& h, std::size_t& steps) const {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    while (t < t1) {
      if (steps++ > max_steps) stall(t, "step budget exhausted (explicit pair)");
      bool clipped = false;
      double hs = h;
      if (t + hs >= t1) {
        hs = t1 - t;
        clipped = true;
      }
      if (hs < 16.0 * std::numeric_limits<double>::epsilon() * std::fmax(1.0, std::fabs(t))) {
        stall(t, "step size underflow (explicit pair)");
      }

      const VecC k2 = M * (y + hs * a21 * k1);
      const VecC k3 = M * (y + hs * (a31 * k1 + a32 * k2));
      const VecC k4 = M * (y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      const VecC k5 = M * (y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const VecC k6 = M * (y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const VecC y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const VecC k7 = M * y_new;
      const VecC err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const double en = error_norm(y, y_new, err, rel, abs);
      if (en <= 1.0) {
        t += hs;
        y = y_new;
        k1 = k7;
        if (stats) stats->steps_accepted++;
        const double grow = clamp_factor(0.9 * std::pow(std::fmax(en, 1e-10), -0.2), 0.2, 8.0);
        if (!clipped) h = hs * grow;
        else h = std::fmax(h, hs * grow);
      } else {
        if (stats) stats->steps_rejected++;
        h = hs * clamp_factor(0.9 * std::pow(en, -0.2), 0.1, 1.0);
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Radau IIA, 3 stages, order 5, in extended precision.
//
// For the linear problem the stage increments Z solve
//     (I - h A (x) M) Z = h c (x) (M y)
// (row sums of A equal c), and stiff accuracy gives y1 = y + Z3 without the
// b-weighted recombination that amplifies rounding at large h·‖M‖.
// Error control is step doubling: the h-step result against two h/2 steps,
// difference scaled by 2^5 - 1.
// ---------------------------------------------------------------------------
struct Radau5 {
  MatL M;  // extended-precision copy
  Eigen::Index n;
  double rel, abs;
  std::size_t max_steps;
  OdeStats* stats;

  long double A[3][3];
  long double c[3];

  explicit Radau5(const MatC& Md, double rel_, double abs_, std::size_t max_steps_,
                  OdeStats* stats_)
      : n(Md.rows()), rel(rel_), abs(abs_), max_steps(max_steps_), stats(stats_) {
    M = Md.cast<LongC>();
    const long double s6 = std::sqrt(static_cast<long double>(6.0L));
    A[0][0] = (88.0L - 7.0L * s6) / 360.0L;
    A[0][1] = (296.0L - 169.0L * s6) / 1800.0L;
    A[0][2] = (-2.0L + 3.0L * s6) / 225.0L;
    A[1][0] = (296.0L + 169.0L * s6) / 1800.0L;
    A[1][1] = (88.0L + 7.0L * s6) / 360.0L;
    A[1][2] = (-2.0L - 3.0L * s6) / 225.0L;
    A[2][0] = (16.0L - s6) / 36.0L;
    A[2][1] = (16.0L + s6) / 36.0L;
    A[2][2] = 1.0L / 9.0L;
    c[0] = (4.0L - s6) / 10.0L;
    c[1] = (4.0L + s6) / 10.0L;
    c[2] = 1.0L;
  }

  // One implicit step of size h from y; returns y + Z3.
  VecL step(const VecL& y, long double h) const {
    MatL W = MatL::Zero(3 * n, 3 * n);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) W.block(i * n, j * n, n, n) = (-h * A[i][j]) * M;
      for (Eigen::Index k = 0; k < n; ++k) W(i * n + k, i * n + k) += LongC(1.0L, 0.0L);
    }
    const VecL f0 = M * y;
    VecL rhs(3 * n);
    for (int i = 0; i < 3; ++i) rhs.segment(i * n, n) = (h * c[i]) * f0;
    const VecL Z = W.partialPivLu().solve(rhs);
    return y + Z.segment(2 * n, n);
  }

  void advance(VecL& y, double t0, double t1, double& h, std::size_t& steps) const {
    double t = t0;
    while (t < t1) {
      if (steps++ > max_steps) stall(t, "step budget exhausted (implicit pair)");
      bool clipped = false;
      double hs = h;
      if (t + hs >= t1) {
        hs = t1 - t;
        clipped = true;
      }
      if (hs < 16.0 * std::numeric_limits<double>::epsilon() * std::fmax(1.0, std::fabs(t))) {
        stall(t, "step size underflow (implicit pair)");
      }

      const long double hl = static_cast<long double>(hs);
      const VecL y_full = step(y, hl);
      const VecL y_half = step(step(y, hl / 2.0L), hl / 2.0L);
      const VecL err = (y_half - y_full) / 31.0L;

      const double en = error_norm(y, y_half, err, rel, abs);
      if (en <= 1.0) {
        t += hs;
        y = y_half;
        if (stats) stats->steps_accepted++;
        const double grow =
            clamp_factor(0.9 * std::pow(std::fmax(en, 1e-12), -1.0 / 6.0), 0.2, 8.0);
        if (!clipped) h = hs * grow;
        else h = std::fmax(h, hs * grow);
      } else {
        if (stats) stats->steps_rejected++;
        h = hs * clamp_factor(0.9 * std::pow(en, -1.0 / 6.0), 0.1, 1.0);
      }
    }
  }
};

}  // namespace

bool is_stiff(const Eigen::MatrixXcd& M, double span) { return inf_norm(M) * span > 1e4; }

std::vector<Eigen::VectorXcd> integrate_linear(const Eigen::MatrixXcd& M,
                                               const Eigen::VectorXcd& y0,
                                               const std::vector<double>& t_grid,
                                               const IntegratorOptions& opts, OdeStats* stats) {
  if (M.rows() != M.cols()) throw InvalidParams("integrate_linear: generator must be square");
  if (y0.size() != M.rows()) throw InvalidParams("integrate_linear: state/generator size mismatch");
  if (t_grid.empty()) throw InvalidParams("integrate_linear: empty time grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i])) throw InvalidParams("integrate_linear: non-finite grid time");
    if (i > 0 && t_grid[i] < t_grid[i - 1]) {
      throw InvalidParams("integrate_linear: grid times must be non-decreasing");
    }
  }
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0)) {
    throw InvalidParams("integrate_linear: tolerances must be positive");
  }

  const double span = t_grid.back() - t_grid.front();
  OdeMethod method = opts.method;
  if (method == OdeMethod::kAuto) {
    method = is_stiff(M, span) ? OdeMethod::kRadau5 : OdeMethod::kDormandPrince54;
  }
  if (stats) {
    *stats = OdeStats{};
    stats->method_used = method;
  }

  std::vector<Eigen::VectorXcd> out;
  out.reserve(t_grid.size());
  out.push_back(y0);
  if (t_grid.size() == 1 || span == 0.0) {
    // Degenerate grid: nothing to integrate, replicate across equal times.
    while (out.size() < t_grid.size()) out.push_back(y0);
    return out;
  }

  const double norm = inf_norm(M);
  std::size_t steps = 0;

  if (method == OdeMethod::kDormandPrince54) {
    double h = opts.initial_step > 0.0
                   ? opts.initial_step
                   : std::fmin(span / 100.0, norm > 0.0 ? 0.1 / norm : span / 100.0);
    VecC y = y0;
    VecC k1 = M * y;
    Dopri5 rk{M, opts.rel_tol, opts.abs_tol, opts.max_steps, stats};
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
      if (t_grid[i] > t_grid[i - 1]) rk.advance(y, k1, t_grid[i - 1], t_grid[i], h, steps);
      out.push_back(y);
    }
    return out;
  }

  // Implicit path.
  double h = opts.initial_step > 0.0 ? opts.initial_step : span * 1e-4;
  Radau5 radau(M, opts.rel_tol, opts.abs_tol, opts.max_steps, stats);
  VecL y = y0.cast<LongC>();
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (t_grid[i] > t_grid[i - 1]) radau.advance(y, t_grid[i - 1], t_grid[i], h, steps);
    out.push_back(y.cast<Complex>());
  }
  return out;
}

}  // namespace qhe
