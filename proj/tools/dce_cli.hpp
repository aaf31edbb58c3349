#pragma once

// Command-line front end: compute | sweep | threshold | figure1 | figure2.
//
// Exit codes: 0 success, 2 argument error, 3 domain/physicality error,
// 4 bracketing/convergence error, 5 I/O error.

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "dce/correlations.hpp"
#include "dce/errors.hpp"
#include "dce/io.hpp"
#include "dce/svg_plot.hpp"
#include "dce/sweep.hpp"

namespace dce::cli {

enum class Command { compute, sweep, threshold, figure1, figure2 };

enum ExitCode : int {
  kOk = 0,
  kArgumentError = 2,
  kDomainError = 3,
  kBracketingError = 4,
  kIoError = 5,
};

inline int exit_code_for_kind(std::string_view kind) {
  if (kind == "argument") return kArgumentError;
  if (kind == "invalid_state" || kind == "domain" || kind == "numerical" || kind == "shape") {
    return kDomainError;
  }
  if (kind == "bracketing" || kind == "convergence") return kBracketingError;
  if (kind == "io") return kIoError;
  return kDomainError;
}

// Unit conversions at the command-line boundary.
inline double ghz_to_rad_per_s(double ghz) { return 2.0 * std::numbers::pi * 1e9 * ghz; }
inline double mk_to_k(double mk) { return mk * 1e-3; }
inline double mm_to_m(double mm) { return mm * 1e-3; }

/// Parsed invocation, in command-line units.
struct RunConfig {
  Command command = Command::compute;
  double velocity = 1.2e8;  // m/s
  double drive_ghz = 10.0;  // ω_d / 2π
  double leff_mm = 0.5;
  double epsilon = 0.15;
  double temp_mk = 50.0;
  double detuning_ghz = 0.0;  // δω / 2π
  std::optional<SweepVariable> variable;
  std::optional<double> from;
  std::optional<double> to;
  int points = 200;
  ThresholdMeasure measure = ThresholdMeasure::discord;
  std::optional<std::pair<double, double>> bracket;
  double tol = kDefaultThresholdTol;  // SI units of the variable
  io::Format format = io::Format::csv;
  std::string out;   // empty: standard output
  std::string plot;  // empty: no chart

  ExperimentParams params() const {
    ExperimentParams p;
    p.velocity = velocity;
    p.omega_d = ghz_to_rad_per_s(drive_ghz);
    p.l_eff0 = mm_to_m(leff_mm);
    p.epsilon = epsilon;
    p.temperature = mk_to_k(temp_mk);
    p.detuning = ghz_to_rad_per_s(detuning_ghz);
    p.validate();
    return p;
  }
};

namespace detail {

inline SweepSpec sweep_spec(const RunConfig& config, SweepVariable default_var,
                            double default_from, double default_to) {
  SweepSpec spec;
  spec.base = config.params();
  spec.variable = config.variable.value_or(default_var);
  if (spec.variable != default_var && (!config.from || !config.to)) {
    throw ArgumentError("--from and --to are required when --var is given");
  }
  spec.start = io::from_display(spec.variable, config.from.value_or(default_from));
  spec.stop = io::from_display(spec.variable, config.to.value_or(default_to));
  spec.points = config.points;
  return spec;
}

inline std::string x_label(SweepVariable v) {
  switch (v) {
    case SweepVariable::epsilon: return "drive amplitude epsilon";
    case SweepVariable::temperature: return "temperature (mK)";
    case SweepVariable::n_th: return "thermal photons n_th";
  }
  return "";
}

inline std::string render_plot(const SweepResult& result, const std::string& title) {
  std::vector<double> x;
  plot::Series sqrt_c{"sqrt(discord)", "#d62728", "6,4", {}};
  plot::Series e_n{"log negativity", "#1f77b4", "", {}};
  for (const SweepRow& row : result.rows) {
    x.push_back(io::display_value(result.spec.variable, row.value));
    sqrt_c.y.push_back(row.report.sqrt_discord);
    e_n.y.push_back(row.report.log_negativity);
  }
  return plot::render_svg(title, x_label(result.spec.variable), x, {sqrt_c, e_n});
}

inline std::pair<double, double> default_bracket(const RunConfig& config, SweepVariable variable) {
  switch (variable) {
    case SweepVariable::temperature: return {35.0, 120.0};
    case SweepVariable::n_th: return {1e-3, 0.2};
    case SweepVariable::epsilon: {
      const ExperimentParams p = config.params();
      const ModePair pair = mode_pair(p);
      const double n = 0.5 * (pair.n_minus + pair.n_plus);
      return {0.0, std::sqrt(n) * 2.0 * p.velocity / (p.l_eff0 * p.omega_d)};
    }
  }
  return {0.0, 1.0};
}

inline void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
  if (config.out.empty()) {
    out << content;
  } else {
    io::write_file(config.out, content);
  }
}

inline std::string render_table(const io::OutputTable& table, io::Format format) {
  return format == io::Format::csv ? io::to_csv(table) : io::to_json_string(table);
}

}  // namespace detail

/// Runs one command. Errors propagate as exceptions; see run() for the
/// mapping to exit codes.
inline void execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<SweepSpec> spec;
  std::string title;
  switch (config.command) {
    case Command::compute: {
      const ExperimentParams p = config.params();
      const CorrelationReport report = analyze(p);
      detail::emit(config, detail::render_table(io::to_table(report, p), config.format), out);
      return;
    }
    case Command::threshold: {
      const SweepVariable var = config.variable.value_or(SweepVariable::temperature);
      const auto [lo, hi] = config.bracket.value_or(detail::default_bracket(config, var));
      const ThresholdResult t = find_threshold(config.params(), config.measure, var,
                                               io::from_display(var, lo), io::from_display(var, hi),
                                               config.tol);
      detail::emit(config,
                   config.format == io::Format::csv ? io::threshold_to_csv(t)
                                                    : io::threshold_to_json(t).dump(2) + "\n",
                   out);
      return;
    }
    case Command::sweep:
      if (!config.variable || !config.from || !config.to) {
        throw ArgumentError("sweep requires --var, --from and --to");
      }
      spec = detail::sweep_spec(config, *config.variable, *config.from, *config.to);
      title = "Discord and negativity sweep";
      break;
    case Command::figure1:
      spec = detail::sweep_spec(config, SweepVariable::epsilon, 0.0, 0.25);
      title = fmt::format("sqrt(C) and E_N vs drive amplitude, T = {} mK", config.temp_mk);
      break;
    case Command::figure2:
      spec = detail::sweep_spec(config, SweepVariable::temperature, 30.0, 80.0);
      title = fmt::format("sqrt(C) and E_N vs temperature, epsilon = {}", config.epsilon);
      break;
  }

  const SweepResult result = run_sweep(*spec);
  const std::string table = detail::render_table(io::to_table(result), config.format);
  std::string chart;
  if (!config.plot.empty()) chart = detail::render_plot(result, title);
  detail::emit(config, table, out);
  if (!chart.empty()) io::write_file(config.plot, chart);
  if (config.format == io::Format::csv) {
    for (const std::string& note : result.annotations) err << "note: " << note << '\n';
  }
}

inline void write_error_record(std::ostream& err, std::string_view kind, std::string_view message,
                               int code, std::optional<std::size_t> completed_rows = {}) {
  nlohmann::json record = {{"error", kind}, {"message", message}, {"exit_code", code}};
  if (completed_rows) record["completed_rows"] = *completed_rows;
  err << record.dump() << '\n';
}

/// Parses flags and runs; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Quantum correlations of dynamical-Casimir radiation in a SQUID-terminated waveguide"};
  app.require_subcommand(1);
  RunConfig config;

  const std::map<std::string, SweepVariable> var_map{{"epsilon", SweepVariable::epsilon},
                                                     {"temp", SweepVariable::temperature},
                                                     {"nth", SweepVariable::n_th}};
  const std::map<std::string, ThresholdMeasure> measure_map{
      {"discord", ThresholdMeasure::discord},
      {"negativity", ThresholdMeasure::log_negativity},
      {"exact-discord", ThresholdMeasure::exact_discord}};
  const std::map<std::string, io::Format> format_map{{"csv", io::Format::csv},
                                                     {"json", io::Format::json}};

  std::string bracket_text;
  std::string var_text, measure_text, format_text;
  // NaN marks "not given"; both flags are optional on figure1/figure2.
  double from_value = std::numeric_limits<double>::quiet_NaN();
  double to_value = std::numeric_limits<double>::quiet_NaN();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--velocity", config.velocity, "waveguide speed of light (m/s)");
    sub->add_option("--drive-ghz", config.drive_ghz, "drive frequency omega_d/2pi (GHz)");
    sub->add_option("--leff-mm", config.leff_mm, "effective length L_eff(0) (mm)");
    sub->add_option("--epsilon", config.epsilon, "normalized drive amplitude");
    sub->add_option("--temp-mk", config.temp_mk, "bath temperature (mK)");
    sub->add_option("--detuning-ghz", config.detuning_ghz, "detuning delta omega/2pi (GHz)");
    sub->add_option("--format", format_text, "csv or json")
        ->check(CLI::IsMember(format_map, CLI::ignore_case));
    sub->add_option("--out", config.out, "output path (default: stdout)");
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--var", var_text, "swept variable: epsilon, temp or nth")
        ->check(CLI::IsMember(var_map, CLI::ignore_case));
    sub->add_option("--from", from_value, "sweep start (mK for temp)");
    sub->add_option("--to", to_value, "sweep stop (mK for temp)");
    sub->add_option("--points", config.points, "number of grid points")->check(CLI::Range(2, 10000000));
    sub->add_option("--plot", config.plot, "write an SVG line chart to this path");
  };

  CLI::App* compute = app.add_subcommand("compute", "correlations at a single parameter point");
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one variable");
  CLI::App* threshold = app.add_subcommand("threshold", "find where a measure vanishes");
  CLI::App* fig1 = app.add_subcommand("figure1", "amplitude sweep, T = 50 mK defaults");
  CLI::App* fig2 = app.add_subcommand("figure2", "temperature sweep, epsilon = 0.15 defaults");
  for (CLI::App* sub : {compute, sweep, threshold, fig1, fig2}) add_common(sub);
  for (CLI::App* sub : {sweep, fig1, fig2}) add_sweep(sub);
  threshold->add_option("--var", var_text, "variable: epsilon, temp or nth")
      ->check(CLI::IsMember(var_map, CLI::ignore_case));
  threshold->add_option("--measure", measure_text, "discord, negativity or exact-discord")
      ->check(CLI::IsMember(measure_map, CLI::ignore_case));
  threshold->add_option("--bracket", bracket_text, "lo,hi in the variable's units (mK for temp)");
  threshold->add_option("--tol", config.tol, "bisection tolerance in SI units")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error_record(err, "argument", e.what(), kArgumentError);
    return kArgumentError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == compute) config.command = Command::compute;
  if (chosen == sweep) config.command = Command::sweep;
  if (chosen == threshold) config.command = Command::threshold;
  if (chosen == fig1) config.command = Command::figure1;
  if (chosen == fig2) config.command = Command::figure2;
  // IsMember with ignore_case rewrites the value to the matching key.
  if (!var_text.empty()) config.variable = var_map.at(var_text);
  if (!measure_text.empty()) config.measure = measure_map.at(measure_text);
  if (!format_text.empty()) config.format = format_map.at(format_text);
  if (!std::isnan(from_value)) config.from = from_value;
  if (!std::isnan(to_value)) config.to = to_value;

  try {
    if (!bracket_text.empty()) {
      const auto comma = bracket_text.find(',');
      if (comma == std::string::npos) {
        throw ArgumentError(fmt::format("--bracket expects lo,hi, got '{}'", bracket_text));
      }
      try {
        config.bracket = std::pair{std::stod(bracket_text.substr(0, comma)),
                                   std::stod(bracket_text.substr(comma + 1))};
      } catch (const std::logic_error&) {
        throw ArgumentError(fmt::format("--bracket expects two numbers, got '{}'", bracket_text));
      }
    }
    execute(config, out, err);
  } catch (const PartialSweepError& e) {
    const int code = exit_code_for_kind(e.kind());
    write_error_record(err, e.kind(), e.what(), code, e.completed_rows().size());
    return code;
  } catch (const Error& e) {
    const int code = exit_code_for_kind(e.kind());
    write_error_record(err, e.kind(), e.what(), code);
    return code;
  }
  return kOk;
}

}  // namespace dce::cli
