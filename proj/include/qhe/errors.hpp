#pragma once

#include <stdexcept>
#include <string>

namespace qhe {

// Root of the library's error hierarchy. Everything thrown on purpose derives
// from this, so callers can catch qhe::Error and map it to an exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter set rejected by validation (sign, closure, finiteness).
class InvalidParams : public Error {
 public:
  explicit InvalidParams(const std::string& what) : Error(what) {}
};

// A state object violates its own contract (trace, shape, finiteness).
class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error(what) {}
};

// Adaptive integrator could not proceed: step size underflowed or the step
// budget ran out. Carries the time where integration stalled.
class StiffnessFailure : public Error {
 public:
  StiffnessFailure(const std::string& what, double t_reached)
      : Error(what), t_reached_(t_reached) {}
  double t_reached() const { return t_reached_; }

 private:
  double t_reached_;
};

// Liouvillian kernel is not one-dimensional, so "the" steady state does not
// exist (decoupled pools, both drives off, ...).
class DegenerateSteadyState : public Error {
 public:
  explicit DegenerateSteadyState(const std::string& what) : Error(what) {}
};

// Pump drive too strong for the overdamped relaxation-rate branch: the rate
// expression turns complex and the population approach becomes oscillatory.
class OscillatoryRegime : public Error {
 public:
  explicit OscillatoryRegime(const std::string& what) : Error(what) {}
};

// Time-dependent effective-bath map evaluated past its divergence time.
class BeyondHorizon : public Error {
 public:
  explicit BeyondHorizon(const std::string& what) : Error(what) {}
};

// High-temperature expressions requested with pump occupation too small for
// the expansion to mean anything.
class LowTemperatureRegime : public Error {
 public:
  explicit LowTemperatureRegime(const std::string& what) : Error(what) {}
};

// Dimensionless coupling equals the rate ratio: the printed maximum-power
// expression is a 0/0 there, so the caller must perturb the inputs.
class SingularCoupling : public Error {
 public:
  explicit SingularCoupling(const std::string& what) : Error(what) {}
};

// Operation defined only on resonance was invoked with finite detuning.
class ResonanceRequired : public Error {
 public:
  explicit ResonanceRequired(const std::string& what) : Error(what) {}
};

// Config file unreadable, unparsable, or containing unknown/ill-typed keys.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Catch-all for numerical breakdown that is not a stiffness stall (non-finite
// intermediates, residual over threshold, ...).
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what) : Error(what) {}
};

}  // namespace qhe
