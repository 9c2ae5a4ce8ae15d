#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qhe/errors.hpp"

namespace qhe {

using Complex = std::complex<double>;
using StateVector = Eigen::Vector<Complex, 8>;

// Component order of the reduced density-matrix vector. Only the matrix
// elements that couple under the model's equations of motion are carried:
// four populations and the two driven coherence pairs.
enum StateIndex : int {
  kGG = 0,  // population of |g>
  k00 = 1,  // population of |0>
  k11 = 2,  // population of |1>
  k22 = 3,  // population of |2>
  kG2 = 4,  // coherence <g|rho|2> (pump transition)
  k2G = 5,  // coherence <2|rho|g>
  k01 = 6,  // coherence <0|rho|1> (probe transition)
  k10 = 7,  // coherence <1|rho|0>
};

// Eight-component density state with its physicality diagnostics.
struct DensityState {
  StateVector v = StateVector::Zero();

  Complex& operator[](int i) { return v[i]; }
  const Complex& operator[](int i) const { return v[i]; }

  // Sum of populations; physical states have trace 1 (real).
  Complex trace() const { return v[kGG] + v[k00] + v[k11] + v[k22]; }

  // Max violation of rho = rho^dagger representable in this vector:
  // imaginary parts of populations and mismatch of the coherence pairs.
  double hermiticity_error() const {
    double e = 0.0;
    for (int i = kGG; i <= k22; ++i) e = std::fmax(e, std::fabs(v[i].imag()));
    e = std::fmax(e, std::abs(v[kG2] - std::conj(v[k2G])));
    e = std::fmax(e, std::abs(v[k01] - std::conj(v[k10])));
    return e;
  }

  // Most negative population real part (0 if all are non-negative).
  double positivity_floor() const {
    double f = 0.0;
    for (int i = kGG; i <= k22; ++i) f = std::fmin(f, v[i].real());
    return f;
  }

  bool is_finite() const {
    for (int i = 0; i < 8; ++i) {
      if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    }
    return true;
  }

  // Throws InvalidState unless finite, unit trace and Hermitian within tol.
  void validate(double tol = 1e-9) const {
    if (!is_finite()) throw InvalidState("DensityState: non-finite component");
    if (std::abs(trace() - Complex(1.0, 0.0)) > tol) {
      throw InvalidState("DensityState: trace differs from 1 beyond tolerance");
    }
    if (hermiticity_error() > tol) {
      throw InvalidState("DensityState: Hermiticity violated beyond tolerance");
    }
  }

  // All population in |g>, no coherences.
  static DensityState ground() {
    DensityState s;
    s.v[kGG] = 1.0;
    return s;
  }

  static DensityState from_populations(double gg, double p00, double p11, double p22) {
    DensityState s;
    s.v[kGG] = gg;
    s.v[k00] = p00;
    s.v[k11] = p11;
    s.v[k22] = p22;
    return s;
  }
};

}  // namespace qhe
