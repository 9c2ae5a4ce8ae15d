#include "doctest.h"

#include <vector>

#include "qhe/effective_bath.hpp"
#include "qhe/engine.hpp"
#include "qhe/evolve.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/model.hpp"
#include "qhe/steady_state.hpp"

using namespace qhe;

TEST_SUITE("steady-state") {

TEST_CASE("full-model kernel reproduces the pumped triple with the cold leak") {
  const ModelParams p = ModelParams::reference();
  const Generator M = build_generator(p);
  const DensityState ss = steady_state(M);

  // populations sum to one and the 0-level carries the detailed-balance share
  const double sum = ss[kGG].real() + ss[k00].real() + ss[k11].real() + ss[k22].real();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  const double nc = p.n_c();
  CHECK(ss[k00].real() / ss[kGG].real() ==
        doctest::Approx(nc / (nc + 1.0)).epsilon(1e-9));

  // 1-2 pool in thermal ratio, pair transfer equalizes g with 2
  const double n2 = p.n_2();
  CHECK(ss[k22].real() / ss[k11].real() ==
        doctest::Approx(n2 / (n2 + 1.0)).epsilon(1e-9));
  CHECK(ss[k22].real() / ss[kGG].real() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kernel solution agrees with a long integration") {
  const ModelParams p = ModelParams::reference();
  const Generator M = build_generator(p);
  const double gt = gamma_tilde(p, GammaTildeMode::kHighTemperature);
  const Trajectory traj = evolve(M, DensityState::ground(), {0.0, 40.0 / gt});
  const DensityState ss = steady_state(M);
  for (int i = kGG; i <= k22; ++i) {
    CHECK(std::abs(traj.states.back()[i] - ss[i]) <= 1e-8);
  }
}

TEST_CASE("pump decoupled block matches the closed-form triple") {
  ModelParams p = ModelParams::reference();
  p.Gamma_c = 0.0;
  p.lambda = 0.0;
  const Eigen::MatrixXcd M5 = extract_subsystem(
      Eigen::MatrixXcd(build_generator(p)), {kGG, k11, k22, kG2, k2G});
  const SteadyStateSolution sol = steady_state_kernel(M5, {0, 1, 2});
  const auto want = pumped_steady_triple(p);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(sol.state[i] - Complex(want[static_cast<std::size_t>(i)], 0.0)) <= 1e-12);
  }
  CHECK(sol.scaled_residual <= 1e-10);
  CHECK(sol.kernel_gap > 1e-12);
}

TEST_CASE("three-level generator and direct solution coincide") {
  const double lambda = 0.8, Gh = 0.6, Gc = 1.3, nh = 2.5, nc = 0.2;
  const EngineSteadyState direct = three_level_steady_state(lambda, Gh, Gc, nh, nc);
  const Eigen::MatrixXcd M = three_level_generator(lambda, Gh, Gc, nh, nc);
  const SteadyStateSolution sol = steady_state_kernel(M, {0, 1, 2});
  CHECK(std::abs(sol.state[0] - Complex(direct.rho_gg, 0)) <= 1e-12);
  CHECK(std::abs(sol.state[1] - Complex(direct.rho_00, 0)) <= 1e-12);
  CHECK(std::abs(sol.state[2] - Complex(direct.rho_11, 0)) <= 1e-12);
  CHECK(std::abs(sol.state[3] - direct.rho_01) <= 1e-12);
}

TEST_CASE("uncoupled contacts leave a degenerate kernel") {
  // With both drives off, the g-0 contact and the 1-2 contact equilibrate
  // independently; the stationary state is a two-parameter family.
  ModelParams p = ModelParams::reference();
  p.Omega_p = 0.0;
  p.lambda = 0.0;
  CHECK_THROWS_AS(steady_state(build_generator(p)), DegenerateSteadyState);
}

TEST_CASE("probe-only model thermalizes both pools") {
  // Probe on, pump off: 0-1 coupling chains 1 and 2 to the cold contact, so
  // the kernel is unique again and purely thermal in each link.
  ModelParams p = ModelParams::reference();
  p.Omega_p = 0.0;
  p.lambda = 5e-4;
  const DensityState ss = steady_state(build_generator(p));
  const double nc = p.n_c();
  CHECK(ss[k00].real() / ss[kGG].real() ==
        doctest::Approx(nc / (nc + 1.0)).epsilon(1e-6));
  // coherent 0-1 exchange carries no population difference in steady state
  CHECK(ss[k00].real() == doctest::Approx(ss[k11].real()).epsilon(1e-6));
}

}  // TEST_SUITE
