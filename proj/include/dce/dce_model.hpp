#pragma once

// Dynamical-Casimir-effect model of a SQUID-terminated waveguide: maps the
// experimental knobs to the small parameter f, the thermal occupations of
// the two output modes, and the output two-mode covariance matrix.

#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "dce/errors.hpp"
#include "dce/gaussian_core.hpp"

namespace dce {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K
}  // namespace constants

/// Upper edge of the perturbative regime for f.
inline constexpr double kPerturbativeLimit = 0.05;

/// Physical knobs of the experiment, SI units throughout.
struct ExperimentParams {
  double velocity = 1.2e8;                                   // m/s
  double omega_d = 2.0 * std::numbers::pi * 10e9;            // rad/s
  double l_eff0 = 0.5e-3;                                    // m
  double epsilon = 0.15;                                     // normalized drive amplitude
  double temperature = 0.05;                                 // K
  double detuning = 0.0;                                     // rad/s
  std::optional<double> z0;  // characteristic impedance (Ohm), metadata only

  void validate() const {
    if (!(velocity > 0.0) || !std::isfinite(velocity)) {
      throw ArgumentError(fmt::format("velocity must be positive, got {}", velocity));
    }
    if (!(omega_d > 0.0) || !std::isfinite(omega_d)) {
      throw ArgumentError(fmt::format("drive frequency must be positive, got {}", omega_d));
    }
    if (!(l_eff0 > 0.0) || !std::isfinite(l_eff0)) {
      throw ArgumentError(fmt::format("effective length must be positive, got {}", l_eff0));
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
      throw ArgumentError(fmt::format("drive amplitude must be >= 0, got {}", epsilon));
    }
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
      throw ArgumentError(fmt::format("temperature must be >= 0, got {}", temperature));
    }
    if (!std::isfinite(detuning)) {
      throw ArgumentError("detuning must be finite");
    }
  }
};

/// The two correlated output frequencies and their thermal occupations.
struct ModePair {
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  double n_minus = 0.0;
  double n_plus = 0.0;
};

/// f = ε L_eff ω_d / (2v), the velocity ratio v_eff / 2v.
inline double small_parameter(const ExperimentParams& params) {
  params.validate();
  return params.epsilon * params.l_eff0 * params.omega_d / (2.0 * params.velocity);
}

inline bool is_perturbative(double f) { return f <= kPerturbativeLimit; }

/// Bose-Einstein occupation 1 / (exp(ħω / k_B T) - 1).
inline double thermal_occupation(double temperature, double omega) {
  if (!(omega > 0.0)) {
    throw ArgumentError(fmt::format("mode frequency must be positive, got {}", omega));
  }
  if (!(temperature >= 0.0)) {
    throw ArgumentError(fmt::format("temperature must be >= 0, got {}", temperature));
  }
  if (temperature == 0.0) {
    return 0.0;
  }
  const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

/// Inverse of thermal_occupation in T; n = 0 maps to T = 0.
inline double temperature_for_occupation(double n, double omega) {
  if (!(omega > 0.0)) {
    throw ArgumentError(fmt::format("mode frequency must be positive, got {}", omega));
  }
  if (!(n >= 0.0)) {
    throw ArgumentError(fmt::format("occupation must be >= 0, got {}", n));
  }
  if (n == 0.0) {
    return 0.0;
  }
  return constants::hbar * omega / (constants::k_boltzmann * std::log1p(1.0 / n));
}

inline ModePair mode_pair(const ExperimentParams& params) {
  params.validate();
  const double half = 0.5 * params.omega_d;
  if (!(std::abs(params.detuning) < half)) {
    throw ArgumentError(
        fmt::format("detuning {} out of range (|δω| < ω_d/2 = {})", params.detuning, half));
  }
  // The larger frequency is at least ω_d/2, so ω_d - hi is exact and the
  // pair sums to ω_d without rounding.
  const double hi = half + std::abs(params.detuning);
  const double lo = params.omega_d - hi;
  ModePair pair;
  pair.omega_plus = params.detuning >= 0.0 ? hi : lo;
  pair.omega_minus = params.detuning >= 0.0 ? lo : hi;
  pair.n_minus = thermal_occupation(params.temperature, pair.omega_minus);
  pair.n_plus = thermal_occupation(params.temperature, pair.omega_plus);
  return pair;
}

/// Linear map of the quadratures R = S R0 in (q-, p-, q+, p+) ordering:
/// q± = -(q0± + f p0∓), p± = -(p0± + f q0∓).
inline Matrix4 scattering_matrix(double f) {
  if (!(f >= 0.0)) {
    throw ArgumentError(fmt::format("small parameter must be >= 0, got {}", f));
  }
  Matrix4 s = -Matrix4::Identity();
  s(0, 3) = -f;
  s(1, 2) = -f;
  s(2, 1) = -f;
  s(3, 0) = -f;
  return s;
}

inline CovMatrix2Mode input_covariance(double n_minus, double n_plus) {
  if (!(n_minus >= 0.0) || !(n_plus >= 0.0)) {
    throw ArgumentError(fmt::format("occupations must be >= 0, got ({}, {})", n_minus, n_plus));
  }
  Matrix4 m = Matrix4::Zero();
  const double vm = 0.5 * (1.0 + 2.0 * n_minus);
  const double vp = 0.5 * (1.0 + 2.0 * n_plus);
  m.diagonal() << vm, vm, vp, vp;
  return CovMatrix2Mode(m);
}

/// Output covariance V = (1/2)(A, C; Cᵀ, B) with
/// A = [1 + 2n- + f²(1 + 2n+)]·1, B = [1 + 2n+ + f²(1 + 2n-)]·1,
/// C = 2f(1 + n+ + n-)·σx.
inline CovMatrix2Mode output_covariance(double f, double n_minus, double n_plus) {
  if (!(f >= 0.0)) {
    throw ArgumentError(fmt::format("small parameter must be >= 0, got {}", f));
  }
  if (!(n_minus >= 0.0) || !(n_plus >= 0.0)) {
    throw ArgumentError(fmt::format("occupations must be >= 0, got ({}, {})", n_minus, n_plus));
  }
  const double a = 0.5 * (1.0 + 2.0 * n_minus + f * f * (1.0 + 2.0 * n_plus));
  const double b = 0.5 * (1.0 + 2.0 * n_plus + f * f * (1.0 + 2.0 * n_minus));
  const double c = f * (1.0 + n_plus + n_minus);
  Matrix4 m;
  // clang-format off
  m << a,   0.0, 0.0, c,
       0.0, a,   c,   0.0,
       0.0, c,   b,   0.0,
       c,   0.0, 0.0, b;
  // clang-format on
  return CovMatrix2Mode(m);
}

inline CovMatrix2Mode output_covariance(const ExperimentParams& params) {
  const ModePair pair = mode_pair(params);
  return output_covariance(small_parameter(params), pair.n_minus, pair.n_plus);
}

}  // namespace dce
