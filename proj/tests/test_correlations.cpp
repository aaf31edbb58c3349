#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dce/correlations.hpp"
#include "dce/dce_model.hpp"
#include "oracles.hpp"

namespace dce {
namespace {

constexpr double kF = 0.019635;
constexpr double kN = 0.0083;

ExperimentParams caption_params(double epsilon, double temperature) {
  ExperimentParams p;
  p.epsilon = epsilon;
  p.temperature = temperature;
  return p;
}

// Smallest n for which output_covariance(f, n, n) is physical.
double thermal_floor(double f) { return f * f / (2.0 * (1.0 - f * f)); }

TEST(EntropyH, Examples) {
  EXPECT_EQ(entropy_h(0.5), 0.0);
  EXPECT_EQ(entropy_h(1.5), 2.0);
  EXPECT_NEAR(entropy_h(1.0), 1.3774437510817343, 1e-15);
  EXPECT_NEAR(entropy_h(1.0), 1.5 * std::log2(1.5) + 0.5, 1e-15);
}

TEST(EntropyH, Domain) {
  EXPECT_THROW(entropy_h(0.4), DomainError);
  EXPECT_THROW(entropy_h(std::nan("")), DomainError);
  EXPECT_EQ(entropy_h(0.5 - 1e-13), 0.0);
}

TEST(EntropyH, IncreasingAboveVacuum) {
  double prev = entropy_h(0.5);
  for (int i = 1; i < 100; ++i) {
    const double h = entropy_h(0.5 + 0.05 * i);
    EXPECT_GT(h, prev);
    prev = h;
  }
}

TEST(GaussianDiscord, TrivialStatesVanish) {
  EXPECT_EQ(gaussian_discord(CovMatrix2Mode::vacuum()), 0.0);
  for (double nm : {0.0, 0.003, 0.02, 0.4}) {
    for (double np : {0.0, 0.01, 0.05, 1.3}) {
      EXPECT_NEAR(gaussian_discord(output_covariance(0.0, nm, np)), 0.0, 1e-12) << nm << ' ' << np;
    }
  }
}

TEST(GaussianDiscord, DceValueFromHighPrecisionReference) {
  const double d = gaussian_discord(output_covariance(kF, kN, kN));
  EXPECT_NEAR(d, 0.0026921140490736788, 1e-13);
}

// The full formula is several times larger than f² - n²/2 at the caption
// point; the leading-order expression is not its expansion.
TEST(GaussianDiscord, ExactDiscordExceedsLeadingOrderFormula) {
  const double exact = gaussian_discord(output_covariance(kF, kN, kN));
  const double leading = perturbative_discord(kF, kN);
  EXPECT_NEAR(leading, 3.511e-4, 1e-7);
  EXPECT_GT(exact / leading, 5.0);
}

TEST(GaussianDiscord, MatchesGeneralGaussianDiscordOracle) {
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      const double f = 0.005 + 0.045 * i / 11.0;
      const double floor = thermal_floor(f);
      const double nm = floor + 1e-6 + (0.05 - floor) * j / 11.0;
      const double np = nm * 0.8 + floor;
      const CovMatrix2Mode v = output_covariance(f, nm, np);
      const double expected = oracle::general_gaussian_discord(v.matrix());
      EXPECT_NEAR(gaussian_discord(v), expected, 1e-10) << f << ' ' << nm;
      EXPECT_NEAR(gaussian_discord(standardize(v)), expected, 1e-10) << f << ' ' << nm;
    }
  }
}

TEST(GaussianDiscord, LargeSqueezingMatchesOracle) {
  const CovMatrix2Mode v = output_covariance(0.3, 0.2, 0.1);
  EXPECT_NEAR(gaussian_discord(v), oracle::general_gaussian_discord(v.matrix()), 1e-10);
}

TEST(GaussianDiscord, UnphysicalInputRejected) {
  EXPECT_THROW(gaussian_discord(output_covariance(0.05, 0.0, 0.0)), InvalidStateError);
  Matrix4 m = Matrix4::Zero();
  m.diagonal() << 0.4, 0.4, 0.5, 0.5;
  EXPECT_THROW(gaussian_discord(CovMatrix2Mode{m}), InvalidStateError);
}

TEST(GaussianDiscord, ExchangeSymmetricForEqualOccupations) {
  for (double f : {0.005, 0.02, 0.05}) {
    for (double n : {0.002, 0.01, 0.05}) {
      if (n < thermal_floor(f)) continue;
      const CovMatrix2Mode v = output_covariance(f, n, n);
      EXPECT_NEAR(gaussian_discord(v), gaussian_discord(swap_modes(v)), 1e-12);
    }
  }
}

TEST(GaussianDiscord, NeverVanishesForCorrelatedStates) {
  // f = n/√2 (1 + δ) straddles the leading-order onset at n = 0.01; the
  // leading-order value changes sign, the exact value stays positive.
  const double n = 0.01;
  for (double delta : {-0.2, -0.05, 0.0, 0.05, 0.2}) {
    const double f = n / std::numbers::sqrt2 * (1.0 + delta);
    EXPECT_GT(gaussian_discord_raw(output_covariance(f, n, n)), 1e-5) << delta;
  }
  const auto leading = [&](double delta) {
    return perturbative_discord_raw(n / std::numbers::sqrt2 * (1.0 + delta), n);
  };
  EXPECT_LT(leading(-0.05), 0.0);
  EXPECT_GT(leading(0.05), 0.0);
  EXPECT_NEAR(oracle::bisect(leading, -0.2, 0.2), 0.0, 1e-10);
}

TEST(PerturbativeDiscord, Examples) {
  EXPECT_EQ(perturbative_discord(0.0, 0.0), 0.0);
  EXPECT_NEAR(perturbative_discord(kF, kN), 3.51088225e-4, 1e-16);
  for (double n : {0.001, 0.0083, 0.03}) {
    EXPECT_NEAR(perturbative_discord(n / std::numbers::sqrt2, n), 0.0, 1e-18);
    EXPECT_GT(perturbative_discord(1.001 * n / std::numbers::sqrt2, n), 0.0);
    EXPECT_EQ(perturbative_discord(0.999 * n / std::numbers::sqrt2, n), 0.0);
  }
  EXPECT_THROW(perturbative_discord(-0.01, 0.0), ArgumentError);
  EXPECT_THROW(perturbative_discord(0.01, -0.1), ArgumentError);
}

TEST(LogNegativity, VacuumAndProductStates) {
  EXPECT_EQ(log_negativity(CovMatrix2Mode::vacuum()), 0.0);
  EXPECT_EQ(log_negativity(output_covariance(0.0, 0.01, 0.03)), 0.0);
}

TEST(LogNegativity, SqueezedVacuumEigenvalue) {
  const double f = 0.02;
  const CovMatrix2Mode v = output_covariance(f, 0.0, 0.0);
  const double nu_t = partial_transpose_min_eigenvalue(v);
  EXPECT_NEAR(nu_t, (1 - f) * (1 - f) / 2, 1e-15);
  const auto dense = oracle::dense_symplectic_eigenvalues(partial_transpose(v, Mode::plus).matrix());
  EXPECT_NEAR(nu_t, dense[0], 1e-14);
  EXPECT_NEAR(-std::log2(2 * nu_t), -2 * std::log2(1 - f), 1e-14);
  EXPECT_NEAR(-std::log2(2 * nu_t), 0.058292691319032962, 1e-14);
  // The state itself sits below the uncertainty bound (ν- = (1 - f²)/2).
  EXPECT_THROW(log_negativity(v), InvalidStateError);
}

TEST(LogNegativity, PartialTransposeEigenvalueClosedForm) {
  for (double f : {0.005, 0.02, 0.05}) {
    for (double n : {0.002, 0.01, 0.04}) {
      const CovMatrix2Mode v = output_covariance(f, n, n);
      const double a = v(0, 0);
      const double c = v(0, 3);
      EXPECT_NEAR(partial_transpose_min_eigenvalue(v), a - std::abs(c), 1e-15);
    }
  }
}

TEST(LogNegativity, VanishesNearNEqualsF) {
  for (double n : {0.002, 0.005, 0.01, 0.02}) {
    const auto en = [&](double f) { return log_negativity_raw(output_covariance(f, n, n)); };
    const double f_star = oracle::bisect(en, 0.2 * n, std::sqrt(n));
    EXPECT_NEAR(f_star, 1.0 - 1.0 / std::sqrt(1.0 + 2.0 * n), 1e-10);
    EXPECT_NEAR(f_star / n, 1.0, 2.0 * n);
  }
}

TEST(LogNegativity, ZeroWheneverPptButDiscordPositive) {
  for (double f : {0.005, 0.01, 0.02}) {
    for (int j = 0; j < 30; ++j) {
      const double n = 0.001 + 0.002 * j;
      if (n < thermal_floor(f)) continue;
      const CovMatrix2Mode v = output_covariance(f, n, n);
      if (partial_transpose_min_eigenvalue(v) >= 0.5) {
        EXPECT_EQ(log_negativity(v), 0.0);
        EXPECT_GT(gaussian_discord(v), 0.0);
      } else {
        EXPECT_GT(log_negativity(v), 0.0);
      }
    }
  }
}

TEST(Correlations, VanishingPointRatioIsSqrt2) {
  // Leading-order discord vanishes at n = √2 f, negativity at n ≈ f.
  for (double f : {0.005, 0.01, 0.015, 0.02}) {
    const auto en = [&](double n) { return log_negativity_raw(output_covariance(f, n, n)); };
    const auto cd = [&](double n) { return perturbative_discord_raw(f, n); };
    const double n_neg = oracle::bisect(en, 0.5 * f, 3.0 * f);
    const double n_dis = oracle::bisect(cd, 0.5 * f, 3.0 * f);
    EXPECT_NEAR(n_dis / n_neg, std::numbers::sqrt2, 0.05 * std::numbers::sqrt2) << f;
  }
}

TEST(Correlations, MonotoneInOccupation) {
  for (double f : {0.005, 0.02, 0.04}) {
    double prev_d = INFINITY, prev_e = INFINITY, prev_p = INFINITY;
    for (int j = 0; j < 40; ++j) {
      const double n = thermal_floor(f) + 0.05 * j / 39.0;
      const CovMatrix2Mode v = output_covariance(f, n, n);
      const double d = gaussian_discord(v);
      const double e = log_negativity(v);
      const double p = perturbative_discord(f, n);
      EXPECT_LE(d, prev_d);
      EXPECT_LE(e, prev_e);
      EXPECT_LE(p, prev_p);
      prev_d = d;
      prev_e = e;
      prev_p = p;
    }
  }
}

TEST(OnsetAmplitude, Examples) {
  EXPECT_EQ(onset_amplitude(caption_params(0.1, 0.0), OnsetMeasure::discord), 0.0);
  EXPECT_EQ(onset_amplitude(caption_params(0.1, 0.0), OnsetMeasure::negativity), 0.0);
  const auto p = caption_params(0.1, 0.05);
  EXPECT_NEAR(onset_amplitude(p, OnsetMeasure::discord), 0.044859377144719957, 1e-15);
  EXPECT_NEAR(onset_amplitude(p, OnsetMeasure::negativity), 0.063440739557672612, 1e-15);
}

TEST(OnsetAmplitude, Errors) {
  auto p = caption_params(0.1, 0.05);
  p.omega_d = 0.0;
  EXPECT_THROW(onset_amplitude(p, OnsetMeasure::discord), ArgumentError);
  p = caption_params(0.1, 0.05);
  p.l_eff0 = 0.0;
  EXPECT_THROW(onset_amplitude(p, OnsetMeasure::negativity), ArgumentError);
}

TEST(Analyze, ReportIsConsistent) {
  const CorrelationReport r = analyze(caption_params(0.15, 0.05));
  EXPECT_NEAR(r.f, 0.019634954084936208, 1e-17);
  EXPECT_EQ(r.n_minus, r.n_plus);
  EXPECT_EQ(r.sqrt_discord, std::sqrt(r.discord));
  EXPECT_GT(r.discord, 0.0);
  EXPECT_GT(r.log_negativity, 0.0);
  EXPECT_GE(r.nu_minus, 0.5);
  EXPECT_LT(r.nu_tilde_minus, 0.5);
  EXPECT_EQ(r.discord_perturbative, perturbative_discord(r.f, r.n_plus));
}

TEST(Analyze, NoDriveGivesZeroCorrelations) {
  const CorrelationReport r = analyze(caption_params(0.0, 0.05));
  EXPECT_EQ(r.discord, 0.0);
  EXPECT_EQ(r.log_negativity, 0.0);
  EXPECT_EQ(r.discord_perturbative, 0.0);
}

}  // namespace
}  // namespace dce
