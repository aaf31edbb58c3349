#pragma once

// CSV / JSON output of correlation reports, sweeps and thresholds.
//
// Tables are written in the command-line units (temperature in mK) with
// 17 significant digits, so every numeric cell parses back to the double
// that was written. NaN is written as `nan` in CSV and `null` in JSON.

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "dce/errors.hpp"
#include "dce/sweep.hpp"

namespace dce::io {

using nlohmann::json;

enum class Format { csv, json };

inline constexpr std::array<std::string_view, 13> kColumns = {
    "variable_value", "epsilon",        "temp_mk",   "f",       "n_th",
    "discord",        "sqrt_discord",   "discord_perturbative", "log_negativity",
    "nu_minus",       "nu_plus",        "nu_tilde_minus",       "annotation"};

/// One output line, in command-line units.
struct OutputRow {
  double variable_value = 0.0;
  double epsilon = 0.0;
  double temp_mk = 0.0;
  double f = 0.0;
  double n_th = 0.0;
  double discord = 0.0;
  double sqrt_discord = 0.0;
  double discord_perturbative = 0.0;
  double log_negativity = 0.0;
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  double nu_tilde_minus = 0.0;
  std::string annotation;
};

struct OutputTable {
  json spec = json::object();
  std::vector<OutputRow> rows;
  std::vector<std::string> annotations;
};

/// Value of a swept variable in command-line units.
inline double display_value(SweepVariable variable, double si) {
  return variable == SweepVariable::temperature ? si * 1e3 : si;
}

inline double from_display(SweepVariable variable, double display) {
  return variable == SweepVariable::temperature ? display * 1e-3 : display;
}

inline std::string_view display_unit(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::epsilon: return "1";
    case SweepVariable::temperature: return "mK";
    case SweepVariable::n_th: return "1";
  }
  return "";
}

inline OutputRow to_output_row(const CorrelationReport& r, double variable_value, double epsilon,
                               double temperature, std::string annotation) {
  OutputRow row;
  row.variable_value = variable_value;
  row.epsilon = epsilon;
  row.temp_mk = temperature * 1e3;
  row.f = r.f;
  row.n_th = 0.5 * (r.n_minus + r.n_plus);
  row.discord = r.discord;
  row.sqrt_discord = r.sqrt_discord;
  row.discord_perturbative = r.discord_perturbative;
  row.log_negativity = r.log_negativity;
  row.nu_minus = r.nu_minus;
  row.nu_plus = r.nu_plus;
  row.nu_tilde_minus = r.nu_tilde_minus;
  row.annotation = std::move(annotation);
  return row;
}

inline json params_to_json(const ExperimentParams& p) {
  json j = {{"velocity", p.velocity},       {"omega_d", p.omega_d},
            {"l_eff0", p.l_eff0},           {"epsilon", p.epsilon},
            {"temperature", p.temperature}, {"detuning", p.detuning}};
  if (p.z0) j["z0"] = *p.z0;
  return j;
}

inline OutputTable to_table(const SweepResult& result) {
  OutputTable table;
  json measures = json::array();
  for (Measure m : result.spec.measures) measures.push_back(std::string(to_string(m)));
  table.spec = {{"variable", std::string(to_string(result.spec.variable))},
                {"unit", std::string(display_unit(result.spec.variable))},
                {"start", display_value(result.spec.variable, result.spec.start)},
                {"stop", display_value(result.spec.variable, result.spec.stop)},
                {"points", result.spec.points},
                {"measures", measures},
                {"base", params_to_json(result.spec.base)}};
  table.rows.reserve(result.rows.size());
  for (const SweepRow& row : result.rows) {
    table.rows.push_back(to_output_row(row.report, display_value(result.spec.variable, row.value),
                                       row.epsilon, row.temperature, row.annotation));
  }
  table.annotations = result.annotations;
  return table;
}

/// Single-point table; variable_value carries the drive amplitude.
inline OutputTable to_table(const CorrelationReport& report, const ExperimentParams& params) {
  OutputTable table;
  table.spec = {{"variable", "none"}, {"base", params_to_json(params)}};
  std::string note = is_perturbative(report.f) ? "" : "non-perturbative";
  table.rows.push_back(
      to_output_row(report, params.epsilon, params.epsilon, params.temperature, std::move(note)));
  return table;
}

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.17g}", x);
}

inline std::string to_csv(const OutputTable& table) {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i > 0) out += ',';
    out += kColumns[i];
  }
  out += '\n';
  for (const OutputRow& r : table.rows) {
    for (double x : {r.variable_value, r.epsilon, r.temp_mk, r.f, r.n_th, r.discord, r.sqrt_discord,
                     r.discord_perturbative, r.log_negativity, r.nu_minus, r.nu_plus,
                     r.nu_tilde_minus}) {
      out += format_double(x);
      out += ',';
    }
    out += r.annotation;
    out += '\n';
  }
  return out;
}

inline json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

inline double double_or_nan(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline json to_json(const OutputTable& table) {
  json rows = json::array();
  for (const OutputRow& r : table.rows) {
    rows.push_back({{"variable_value", number_or_null(r.variable_value)},
                    {"epsilon", number_or_null(r.epsilon)},
                    {"temp_mk", number_or_null(r.temp_mk)},
                    {"f", number_or_null(r.f)},
                    {"n_th", number_or_null(r.n_th)},
                    {"discord", number_or_null(r.discord)},
                    {"sqrt_discord", number_or_null(r.sqrt_discord)},
                    {"discord_perturbative", number_or_null(r.discord_perturbative)},
                    {"log_negativity", number_or_null(r.log_negativity)},
                    {"nu_minus", number_or_null(r.nu_minus)},
                    {"nu_plus", number_or_null(r.nu_plus)},
                    {"nu_tilde_minus", number_or_null(r.nu_tilde_minus)},
                    {"annotation", r.annotation}});
  }
  return {{"spec", table.spec}, {"rows", rows}, {"annotations", table.annotations}};
}

inline std::string to_json_string(const OutputTable& table) { return to_json(table).dump(2) + "\n"; }

inline OutputTable table_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(fmt::format("invalid JSON: {}", e.what()));
  }
  OutputTable table;
  table.spec = j.at("spec");
  for (const json& r : j.at("rows")) {
    OutputRow row;
    row.variable_value = double_or_nan(r.at("variable_value"));
    row.epsilon = double_or_nan(r.at("epsilon"));
    row.temp_mk = double_or_nan(r.at("temp_mk"));
    row.f = double_or_nan(r.at("f"));
    row.n_th = double_or_nan(r.at("n_th"));
    row.discord = double_or_nan(r.at("discord"));
    row.sqrt_discord = double_or_nan(r.at("sqrt_discord"));
    row.discord_perturbative = double_or_nan(r.at("discord_perturbative"));
    row.log_negativity = double_or_nan(r.at("log_negativity"));
    row.nu_minus = double_or_nan(r.at("nu_minus"));
    row.nu_plus = double_or_nan(r.at("nu_plus"));
    row.nu_tilde_minus = double_or_nan(r.at("nu_tilde_minus"));
    row.annotation = r.at("annotation").get<std::string>();
    table.rows.push_back(std::move(row));
  }
  if (j.contains("annotations")) {
    table.annotations = j.at("annotations").get<std::vector<std::string>>();
  }
  return table;
}

inline double parse_double(std::string_view cell) {
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw IoError(fmt::format("not a number: '{}'", cell));
  }
  return x;
}

/// Reads back the rows of a table written by to_csv.
inline std::vector<OutputRow> rows_from_csv(std::string_view text) {
  std::vector<OutputRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV");
  while (std::getline(in, line)) {
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      cells.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    cells.push_back(rest);
    if (cells.size() != kColumns.size()) {
      throw IoError(fmt::format("expected {} CSV cells, got {}", kColumns.size(), cells.size()));
    }
    OutputRow r;
    double* fields[] = {&r.variable_value, &r.epsilon,      &r.temp_mk,
                        &r.f,              &r.n_th,         &r.discord,
                        &r.sqrt_discord,   &r.discord_perturbative, &r.log_negativity,
                        &r.nu_minus,       &r.nu_plus,      &r.nu_tilde_minus};
    for (std::size_t i = 0; i < 12; ++i) *fields[i] = parse_double(cells[i]);
    r.annotation = std::string(cells[12]);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Threshold result in command-line units.
inline json threshold_to_json(const ThresholdResult& t) {
  return {{"measure", std::string(to_string(t.measure))},
          {"variable", std::string(to_string(t.variable))},
          {"unit", std::string(display_unit(t.variable))},
          {"critical_value", display_value(t.variable, t.critical_value)},
          {"bracket_lo", display_value(t.variable, t.bracket_lo)},
          {"bracket_hi", display_value(t.variable, t.bracket_hi)},
          {"iterations", t.iterations},
          {"residual", t.residual}};
}

inline std::string threshold_to_csv(const ThresholdResult& t) {
  return fmt::format(
      "measure,variable,unit,critical_value,bracket_lo,bracket_hi,iterations,residual\n"
      "{},{},{},{},{},{},{},{}\n",
      to_string(t.measure), to_string(t.variable), display_unit(t.variable),
      format_double(display_value(t.variable, t.critical_value)),
      format_double(display_value(t.variable, t.bracket_lo)),
      format_double(display_value(t.variable, t.bracket_hi)), t.iterations,
      format_double(t.residual));
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

}  // namespace dce::io
