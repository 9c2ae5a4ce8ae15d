#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qhe/effective_bath.hpp"
#include "qhe/evolve.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/model.hpp"
#include "qhe/ode.hpp"

using namespace qhe;

TEST_SUITE("ode") {

TEST_CASE("diagonal system matches the analytic exponential") {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(3, 3);
  M(0, 0) = Complex(-1.0, 0.5);
  M(1, 1) = Complex(-0.01, -2.0);
  M(2, 2) = Complex(0.0, 0.0);
  Eigen::VectorXcd y0(3);
  y0 << Complex(1, 0), Complex(0.3, -0.2), Complex(-0.5, 0.1);
  std::vector<double> grid = {0.0, 0.7, 2.5, 10.0};

  for (OdeMethod m : {OdeMethod::kDormandPrince54, OdeMethod::kRadau5}) {
    IntegratorOptions opts;
    opts.method = m;
    // local error control at 1e-11 leaves room for global accumulation
    opts.rel_tol = 1e-11;
    opts.abs_tol = 1e-14;
    const auto states = integrate_linear(M, y0, grid, opts);
    REQUIRE(states.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (int k = 0; k < 3; ++k) {
        const Complex want = y0[k] * std::exp(M(k, k) * grid[i]);
        CHECK(std::abs(states[i][k] - want) <= 1e-9);
      }
    }
  }
}

TEST_CASE("superposition of trajectories") {
  const ModelParams p = ModelParams::reference();
  const Generator M = build_generator(p);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
  a[kGG] = 1.0;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(8);
  b[k11] = 0.6;
  b[k22] = 0.4;
  std::vector<double> grid = {0.0, 2.0, 40.0};
  IntegratorOptions opts;
  const auto sa = integrate_linear(Eigen::MatrixXcd(M), a, grid, opts);
  const auto sb = integrate_linear(Eigen::MatrixXcd(M), b, grid, opts);
  const auto sc = integrate_linear(Eigen::MatrixXcd(M), 2.0 * a - 0.5 * b, grid, opts);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK((sc[i] - (2.0 * sa[i] - 0.5 * sb[i])).norm() <= 1e-10);
  }
}

TEST_CASE("method auto-selection tracks the stiffness heuristic") {
  const ModelParams p = ModelParams::reference();
  const Eigen::MatrixXcd M = build_generator(p);
  CHECK_FALSE(is_stiff(M, 1.0));
  CHECK(is_stiff(M, 1e6));

  Eigen::VectorXcd y0 = Eigen::VectorXcd::Zero(8);
  y0[kGG] = 1.0;
  IntegratorOptions opts;
  OdeStats stats;
  integrate_linear(M, y0, {0.0, 1.0}, opts, &stats);
  CHECK(stats.method_used == OdeMethod::kDormandPrince54);
  integrate_linear(M, y0, {0.0, 1e6}, opts, &stats);
  CHECK(stats.method_used == OdeMethod::kRadau5);
}

TEST_CASE("explicit and implicit paths agree on a moderate span") {
  const ModelParams p = ModelParams::reference();
  const Eigen::MatrixXcd M = build_generator(p);
  Eigen::VectorXcd y0 = Eigen::VectorXcd::Zero(8);
  y0[kGG] = 0.7;
  y0[k22] = 0.3;
  std::vector<double> grid = {0.0, 0.5, 5.0};
  IntegratorOptions ex;
  ex.method = OdeMethod::kDormandPrince54;
  IntegratorOptions im;
  im.method = OdeMethod::kRadau5;
  const auto se = integrate_linear(M, y0, grid, ex);
  const auto si = integrate_linear(M, y0, grid, im);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK((se[i] - si[i]).norm() <= 1e-8);
  }
}

TEST_CASE("grid validation") {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::VectorXcd y0(2);
  y0 << 1.0, 0.0;
  IntegratorOptions opts;
  CHECK_THROWS_AS(integrate_linear(M, y0, {}, opts), InvalidParams);
  CHECK_THROWS_AS(integrate_linear(M, y0, {0.0, 2.0, 1.0}, opts), InvalidParams);
  Eigen::VectorXcd wrong(3);
  wrong << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(integrate_linear(M, wrong, {0.0, 1.0}, opts), InvalidParams);
}

TEST_CASE("step budget exhaustion raises the stiffness failure") {
  const ModelParams p = ModelParams::reference();
  const Eigen::MatrixXcd M = build_generator(p);
  Eigen::VectorXcd y0 = Eigen::VectorXcd::Zero(8);
  y0[kGG] = 1.0;
  IntegratorOptions opts;
  opts.method = OdeMethod::kDormandPrince54;  // forced explicit on a stiff span
  opts.max_steps = 50;
  CHECK_THROWS_AS(integrate_linear(M, y0, {0.0, 1e8}, opts), StiffnessFailure);
}

TEST_CASE("evolve enforces the physical grid and tracks conservation") {
  const ModelParams p = ModelParams::reference();
  const Generator M = build_generator(p);
  CHECK_THROWS_AS(evolve(M, DensityState::ground(), {1.0, 2.0}), InvalidParams);
  CHECK_THROWS_AS(evolve(M, DensityState::ground(), {0.0, 2.0, 2.0}), InvalidParams);

  const double gt = gamma_tilde(p, GammaTildeMode::kHighTemperature);
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(8.0 / gt * i / 50);
  const Trajectory traj = evolve(M, DensityState::ground(), grid);
  CHECK(traj.times.size() == grid.size());
  CHECK(traj.conservation.max_trace_drift <= 1e-10);
  CHECK(traj.conservation.max_hermiticity_error <= 1e-10);
  CHECK(traj.conservation.min_positivity_floor >= -1e-9);
  CHECK(traj.stats.method_used == OdeMethod::kRadau5);
  // populations settle onto the pumped triple
  const auto triple = pumped_steady_triple(p);
  CHECK(traj.states.back()[kGG].real() ==
        doctest::Approx(triple[0]).epsilon(2e-3));
}

}  // TEST_SUITE
