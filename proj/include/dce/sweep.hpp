#pragma once

// Parameter sweeps over drive amplitude, temperature or thermal occupation,
// and bisection for the points where a correlation measure vanishes.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "dce/correlations.hpp"
#include "dce/dce_model.hpp"
#include "dce/errors.hpp"

namespace dce {

enum class SweepVariable { epsilon, temperature, n_th };

enum class Measure { discord, sqrt_discord, perturbative_discord, log_negativity };

/// Measures that bisection can locate. `discord` is the leading-order
/// f² - n²/2, the only discord expression with a vanishing point;
/// `exact_discord` is the full Gaussian formula, which stays positive for
/// every correlated state.
enum class ThresholdMeasure { discord, exact_discord, log_negativity };

inline constexpr std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::epsilon: return "epsilon";
    case SweepVariable::temperature: return "temperature";
    case SweepVariable::n_th: return "n_th";
  }
  return "?";
}

inline constexpr std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::discord: return "discord";
    case Measure::sqrt_discord: return "sqrt_discord";
    case Measure::perturbative_discord: return "discord_perturbative";
    case Measure::log_negativity: return "log_negativity";
  }
  return "?";
}

inline constexpr std::string_view to_string(ThresholdMeasure m) {
  switch (m) {
    case ThresholdMeasure::discord: return "discord";
    case ThresholdMeasure::exact_discord: return "exact_discord";
    case ThresholdMeasure::log_negativity: return "log_negativity";
  }
  return "?";
}

inline std::vector<Measure> all_measures() {
  return {Measure::discord, Measure::sqrt_discord, Measure::perturbative_discord,
          Measure::log_negativity};
}

struct SweepSpec {
  ExperimentParams base;
  SweepVariable variable = SweepVariable::epsilon;
  double start = 0.0;
  double stop = 0.25;
  int points = 200;
  std::vector<Measure> measures = all_measures();

  void validate() const {
    base.validate();
    if (!(start < stop)) {
      throw ArgumentError(fmt::format("sweep needs start < stop, got [{}, {}]", start, stop));
    }
    if (points < 2) {
      throw ArgumentError(fmt::format("sweep needs at least 2 points, got {}", points));
    }
    if (start < 0.0) {
      throw ArgumentError(fmt::format("{} cannot be negative", to_string(variable)));
    }
  }

  bool wants(Measure m) const {
    for (Measure x : measures) {
      if (x == m) return true;
    }
    return false;
  }

  /// Linear grid value at row i; the last row is exactly `stop`.
  double value_at(int i) const {
    if (i == points - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
};

struct SweepRow {
  double value = 0.0;        // swept variable, SI / dimensionless
  double epsilon = 0.0;
  double temperature = 0.0;  // K
  CorrelationReport report;
  std::string annotation;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::vector<std::string> annotations;
};

/// Raised when a row fails; carries the rows completed before it.
class PartialSweepError : public Error {
 public:
  PartialSweepError(std::string message, std::string cause_kind, std::vector<SweepRow> rows)
      : Error(std::move(message)), cause_kind_(std::move(cause_kind)), rows_(std::move(rows)) {}

  const char* kind() const noexcept override { return cause_kind_.c_str(); }
  const std::vector<SweepRow>& completed_rows() const { return rows_; }

 private:
  std::string cause_kind_;
  std::vector<SweepRow> rows_;
};

namespace detail {

inline void append_note(std::string& s, std::string_view note) {
  if (!s.empty()) s += ';';
  s += note;
}

}  // namespace detail

/// Evaluates one grid point through the same path as a single computation.
inline SweepRow evaluate_point(const ExperimentParams& base, SweepVariable variable, double value) {
  ExperimentParams params = base;
  double f = 0.0;
  double n_minus = 0.0;
  double n_plus = 0.0;
  switch (variable) {
    case SweepVariable::epsilon:
    case SweepVariable::temperature: {
      (variable == SweepVariable::epsilon ? params.epsilon : params.temperature) = value;
      const ModePair pair = mode_pair(params);
      f = small_parameter(params);
      n_minus = pair.n_minus;
      n_plus = pair.n_plus;
      break;
    }
    case SweepVariable::n_th:
      if (!(value >= 0.0)) {
        throw ArgumentError(fmt::format("thermal occupation must be >= 0, got {}", value));
      }
      f = small_parameter(params);
      n_minus = value;
      n_plus = value;
      params.temperature = temperature_for_occupation(value, 0.5 * params.omega_d);
      break;
  }

  SweepRow row;
  row.value = value;
  row.epsilon = params.epsilon;
  row.temperature = params.temperature;
  const CovMatrix2Mode v = output_covariance(f, n_minus, n_plus);
  try {
    row.report = analyze(v, f, n_minus, n_plus);
  } catch (const InvalidStateError&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CorrelationReport& r = row.report;
    r.f = f;
    r.n_minus = n_minus;
    r.n_plus = n_plus;
    const SymplecticSpectrum nu = symplectic_eigenvalues(v);
    r.nu_minus = nu.nu_minus;
    r.nu_plus = nu.nu_plus;
    r.nu_tilde_minus = partial_transpose_min_eigenvalue(v);
    r.discord_perturbative = perturbative_discord(f, 0.5 * (n_minus + n_plus));
    r.discord = nan;
    r.sqrt_discord = nan;
    r.log_negativity = nan;
    detail::append_note(row.annotation, "unphysical");
  }
  if (!is_perturbative(f)) {
    detail::append_note(row.annotation, "non-perturbative");
  }
  return row;
}

/// States how √C compares with E_N across the rows.
inline std::string describe_discord_vs_negativity(const std::vector<SweepRow>& rows,
                                                  SweepVariable variable) {
  std::size_t compared = 0;
  std::size_t negativity_larger = 0;
  double first = std::numeric_limits<double>::quiet_NaN();
  for (const SweepRow& row : rows) {
    const double sd = row.report.sqrt_discord;
    const double en = row.report.log_negativity;
    if (std::isnan(sd) || std::isnan(en)) continue;
    ++compared;
    if (en > sd) {
      if (negativity_larger == 0) first = row.value;
      ++negativity_larger;
    }
  }
  if (compared == 0) {
    return "sqrt_discord vs log_negativity: no comparable rows";
  }
  if (negativity_larger == 0) {
    return fmt::format("sqrt_discord >= log_negativity on all {} comparable rows", compared);
  }
  return fmt::format("log_negativity exceeds sqrt_discord on {} of {} rows, first at {} = {:.17g}",
                     negativity_larger, compared, to_string(variable), first);
}

inline SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  result.rows.reserve(static_cast<std::size_t>(spec.points));
  std::size_t non_perturbative = 0;
  std::size_t unphysical = 0;
  for (int i = 0; i < spec.points; ++i) {
    const double value = spec.value_at(i);
    SweepRow row;
    try {
      row = evaluate_point(spec.base, spec.variable, value);
    } catch (const Error& e) {
      throw PartialSweepError(
          fmt::format("sweep aborted at row {} ({} = {}): {}", i, to_string(spec.variable), value,
                      e.what()),
          e.kind(), std::move(result.rows));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!spec.wants(Measure::discord)) row.report.discord = nan;
    if (!spec.wants(Measure::sqrt_discord)) row.report.sqrt_discord = nan;
    if (!spec.wants(Measure::perturbative_discord)) row.report.discord_perturbative = nan;
    if (!spec.wants(Measure::log_negativity)) row.report.log_negativity = nan;
    if (row.annotation.find("non-perturbative") != std::string::npos) ++non_perturbative;
    if (row.annotation.find("unphysical") != std::string::npos) ++unphysical;
    result.rows.push_back(std::move(row));
  }
  if (non_perturbative > 0) {
    result.annotations.push_back(fmt::format(
        "{} rows outside the perturbative regime (f > {})", non_perturbative, kPerturbativeLimit));
  }
  if (unphysical > 0) {
    result.annotations.push_back(
        fmt::format("{} rows violate the uncertainty relation; exact measures set to NaN",
                    unphysical));
  }
  if (spec.wants(Measure::sqrt_discord) && spec.wants(Measure::log_negativity)) {
    result.annotations.push_back(describe_discord_vs_negativity(result.rows, spec.variable));
  }
  return result;
}

struct ThresholdResult {
  ThresholdMeasure measure = ThresholdMeasure::discord;
  SweepVariable variable = SweepVariable::temperature;
  double critical_value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

inline constexpr double kDefaultThresholdTol = 1e-6;
inline constexpr int kDefaultMaxIterations = 200;

/// Unclamped value of `measure` with `variable` set to `value`.
inline double threshold_measure_value(const ExperimentParams& base, ThresholdMeasure measure,
                                      SweepVariable variable, double value) {
  ExperimentParams params = base;
  double f = 0.0;
  double n_minus = 0.0;
  double n_plus = 0.0;
  if (variable == SweepVariable::n_th) {
    if (!(value >= 0.0)) {
      throw ArgumentError(fmt::format("thermal occupation must be >= 0, got {}", value));
    }
    f = small_parameter(params);
    n_minus = value;
    n_plus = value;
  } else {
    (variable == SweepVariable::epsilon ? params.epsilon : params.temperature) = value;
    const ModePair pair = mode_pair(params);
    f = small_parameter(params);
    n_minus = pair.n_minus;
    n_plus = pair.n_plus;
  }
  switch (measure) {
    case ThresholdMeasure::discord:
      return perturbative_discord_raw(f, 0.5 * (n_minus + n_plus));
    case ThresholdMeasure::exact_discord:
      return gaussian_discord_raw(output_covariance(f, n_minus, n_plus));
    case ThresholdMeasure::log_negativity:
      return log_negativity_raw(output_covariance(f, n_minus, n_plus));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// Bisection for the zero crossing of the unclamped measure inside
/// [lo, hi]; stops once the bracket is narrower than `tol`.
inline ThresholdResult find_threshold(const ExperimentParams& base, ThresholdMeasure measure,
                                      SweepVariable variable, double lo, double hi,
                                      double tol = kDefaultThresholdTol,
                                      int max_iterations = kDefaultMaxIterations) {
  if (!(tol > 0.0)) {
    throw ArgumentError(fmt::format("threshold tolerance must be positive, got {}", tol));
  }
  if (!(lo < hi)) {
    throw BracketingError(fmt::format("empty bracket [{}, {}]", lo, hi));
  }
  auto eval = [&](double x) { return threshold_measure_value(base, measure, variable, x); };
  double f_lo = eval(lo);
  const double f_hi = eval(hi);
  if (!(f_lo * f_hi < 0.0)) {
    throw BracketingError(fmt::format("{} has no sign change on {} in [{}, {}] (values {}, {})",
                                      to_string(measure), to_string(variable), lo, hi, f_lo, f_hi));
  }

  ThresholdResult result;
  result.measure = measure;
  result.variable = variable;
  int iterations = 0;
  while (hi - lo > tol) {
    if (++iterations > max_iterations) {
      throw ConvergenceError(fmt::format("bisection did not reach tol {} in {} iterations", tol,
                                         max_iterations));
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = eval(mid);
    if (f_mid == 0.0) {
      lo = mid;
      hi = mid;
      break;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.iterations = iterations;
  result.critical_value = 0.5 * (lo + hi);
  result.residual = eval(result.critical_value);
  return result;
}

/// ε threshold of negativity over ε threshold of discord at the base
/// temperature. The ε bracket ends where f = √n, which keeps the state
/// physical while containing both crossings.
inline double threshold_ratio(const ExperimentParams& base, double tol = kDefaultThresholdTol) {
  const ModePair pair = mode_pair(base);
  const double n = 0.5 * (pair.n_minus + pair.n_plus);
  const double eps_hi = std::sqrt(n) * 2.0 * base.velocity / (base.l_eff0 * base.omega_d);
  const ThresholdResult neg =
      find_threshold(base, ThresholdMeasure::log_negativity, SweepVariable::epsilon, 0.0, eps_hi, tol);
  const ThresholdResult dis =
      find_threshold(base, ThresholdMeasure::discord, SweepVariable::epsilon, 0.0, eps_hi, tol);
  return neg.critical_value / dis.critical_value;
}

}  // namespace dce
