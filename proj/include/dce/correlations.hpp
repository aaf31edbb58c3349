#pragma once

// Quantum correlation measures for two-mode Gaussian states. All
// logarithms are base 2, so discord and negativity are in bits.

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "dce/dce_model.hpp"
#include "dce/errors.hpp"
#include "dce/gaussian_core.hpp"

namespace dce {

/// Formula values below zero but above this are reported as zero discord.
inline constexpr double kDiscordClampTol = 1e-10;

/// All correlation measures for one parameter point.
struct CorrelationReport {
  double f = 0.0;
  double n_minus = 0.0;
  double n_plus = 0.0;
  double discord = 0.0;
  double sqrt_discord = 0.0;
  double discord_perturbative = 0.0;
  double log_negativity = 0.0;
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  double nu_tilde_minus = 0.0;

  friend bool operator==(const CorrelationReport&, const CorrelationReport&) = default;
};

/// h(x) = (x + 1/2) log2(x + 1/2) - (x - 1/2) log2(x - 1/2), h(1/2) = 0.
inline double entropy_h(double x) {
  if (std::isnan(x) || x < 0.5 - kTolNum) {
    throw DomainError(fmt::format("entropy_h requires x >= 1/2, got {}", x));
  }
  x = std::max(x, 0.5);
  const double up = x + 0.5;
  const double down = x - 0.5;
  const double tail = down > 0.0 ? down * std::log2(down) : 0.0;
  return up * std::log2(up) - tail;
}

namespace detail {

inline SymplecticSpectrum checked_spectrum(const CovMatrix2Mode& v, double tol_phys) {
  const SymplecticSpectrum nu = symplectic_eigenvalues(v);
  if (nu.nu_minus < 0.5 - tol_phys) {
    throw InvalidStateError(fmt::format(
        "unphysical covariance matrix: smallest symplectic eigenvalue {} < 1/2", nu.nu_minus));
  }
  return {std::max(nu.nu_minus, 0.5), std::max(nu.nu_plus, 0.5)};
}

}  // namespace detail

/// Gaussian discord formula value, before clamping at zero. The measured
/// mode is the second (+) one; call swap_modes() for the other orientation.
inline double gaussian_discord_raw(const CovMatrix2Mode& v, double tol_phys = kTolPhys) {
  const SymplecticSpectrum nu = detail::checked_spectrum(v, tol_phys);
  // Product states carry no correlations; skip the rounding left by h(·) sums.
  if (v.block_c().isZero(0.0)) return 0.0;
  const BlockInvariants inv = block_invariants(v);
  const double sa = std::sqrt(inv.i1);
  const double sb = std::sqrt(inv.i2);
  const double conditional = (sa + 2.0 * sa * sb + 2.0 * inv.i3) / (1.0 + 2.0 * sb);
  return entropy_h(sb) - entropy_h(nu.nu_minus) - entropy_h(nu.nu_plus) + entropy_h(conditional);
}

/// Exact quantum discord of a two-mode squeezed thermal state, in bits.
inline double gaussian_discord(const CovMatrix2Mode& v, double tol_phys = kTolPhys) {
  const double raw = gaussian_discord_raw(v, tol_phys);
  if (raw < 0.0 && raw > -kDiscordClampTol) {
    return 0.0;
  }
  return std::max(raw, 0.0);
}

/// Leading-order discord f² - n²/2, unclamped.
inline double perturbative_discord_raw(double f, double n_th) {
  if (!(f >= 0.0) || !(n_th >= 0.0)) {
    throw ArgumentError(
        fmt::format("perturbative discord needs f >= 0 and n >= 0, got ({}, {})", f, n_th));
  }
  return f * f - 0.5 * n_th * n_th;
}

inline double perturbative_discord(double f, double n_th) {
  return std::max(0.0, perturbative_discord_raw(f, n_th));
}

/// Smallest symplectic eigenvalue of the partial transpose. Needs only a
/// positive definite matrix, not a physical one.
inline double partial_transpose_min_eigenvalue(const CovMatrix2Mode& v) {
  return symplectic_eigenvalues(partial_transpose(v, Mode::plus)).nu_minus;
}

/// -log2(2 ν̃-), positive exactly when the state is entangled.
inline double log_negativity_raw(const CovMatrix2Mode& v, double tol_phys = kTolPhys) {
  detail::checked_spectrum(v, tol_phys);
  return -std::log2(2.0 * partial_transpose_min_eigenvalue(v));
}

inline double log_negativity(const CovMatrix2Mode& v, double tol_phys = kTolPhys) {
  return std::max(0.0, log_negativity_raw(v, tol_phys));
}

enum class OnsetMeasure { discord, negativity };

/// Closed-form critical drive amplitude ε0 = √2 v n / (L ω_d) for discord;
/// the negativity onset is √2 times larger.
inline double onset_amplitude(const ExperimentParams& params, OnsetMeasure measure) {
  if (!(params.omega_d > 0.0)) {
    throw ArgumentError("onset amplitude needs a nonzero drive frequency");
  }
  if (!(params.l_eff0 > 0.0)) {
    throw ArgumentError("onset amplitude needs a nonzero effective length");
  }
  params.validate();
  const double n = thermal_occupation(params.temperature, 0.5 * params.omega_d);
  const double eps0 = std::numbers::sqrt2 * params.velocity * n / (params.l_eff0 * params.omega_d);
  return measure == OnsetMeasure::discord ? eps0 : std::numbers::sqrt2 * eps0;
}

/// Evaluates every measure for an output state built with parameter f and
/// occupations n±. Throws InvalidStateError for unphysical states.
inline CorrelationReport analyze(const CovMatrix2Mode& v, double f, double n_minus, double n_plus) {
  CorrelationReport r;
  r.f = f;
  r.n_minus = n_minus;
  r.n_plus = n_plus;
  const SymplecticSpectrum nu = symplectic_eigenvalues(v);
  r.nu_minus = nu.nu_minus;
  r.nu_plus = nu.nu_plus;
  r.nu_tilde_minus = partial_transpose_min_eigenvalue(v);
  r.discord_perturbative = perturbative_discord(f, 0.5 * (n_minus + n_plus));
  r.discord = gaussian_discord(v);
  r.sqrt_discord = std::sqrt(r.discord);
  r.log_negativity = log_negativity(v);
  return r;
}

inline CorrelationReport analyze(const ExperimentParams& params) {
  const ModePair pair = mode_pair(params);
  const double f = small_parameter(params);
  return analyze(output_covariance(f, pair.n_minus, pair.n_plus), f, pair.n_minus, pair.n_plus);
}

}  // namespace dce
