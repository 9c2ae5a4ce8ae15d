#include "doctest.h"

#include <limits>

#include "qhe/model.hpp"
#include "qhe/units.hpp"

using namespace qhe;

TEST_SUITE("model") {

TEST_CASE("unit conversion round trip") {
  CHECK(rate_from_energy(kHbarEvPs) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(energy_from_rate(rate_from_energy(0.2)) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("occupation and its inverse") {
  const double T = 0.0259;
  for (double n : {0.5, 10.0, 1000.0, 1e6}) {
    const double w = energy_for_occupation(n, T);
    CHECK(bose_occupation(w, T) == doctest::Approx(n).epsilon(1e-12));
  }
  // small-gap stability: omega/T = 1e-9 must not cancel
  const double n = bose_occupation(1e-9 * 0.0259, 0.0259);
  CHECK(n == doctest::Approx(1e9).epsilon(1e-6));
}

TEST_CASE("reference point") {
  const ModelParams p = ModelParams::reference();
  p.validate();
  CHECK(p.T_c == 0.0259);
  CHECK(p.omega_c == 0.2);
  CHECK(p.omega_2g == 2.0);
  CHECK(p.Gamma_2 == 0.025);
  CHECK(p.Gamma_c == 0.025);
  CHECK(p.lambda == 0.0);
  CHECK(p.n_2() == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(p.closure_residual() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("validation rejects broken parameter sets") {
  ModelParams p = ModelParams::reference();
  p.omega_10 += 1e-6;  // breaks the level closure
  CHECK_THROWS_AS(p.validate(), InvalidParams);

  p = ModelParams::reference();
  p.T_c = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParams);

  p = ModelParams::reference();
  p.Omega_p = -1e-4;
  CHECK_THROWS_AS(p.validate(), InvalidParams);

  p = ModelParams::reference();
  p.Gamma_2 = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("switched-off contacts are legal") {
  ModelParams p = ModelParams::reference();
  p.Gamma_c = 0.0;
  p.Omega_p = 0.0;
  CHECK_NOTHROW(p.validate());
}

}  // TEST_SUITE
