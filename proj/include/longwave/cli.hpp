#ifndef LONGWAVE_CLI_HPP
#define LONGWAVE_CLI_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "longwave/residual.hpp"

namespace longwave {

// File sinks a command writes to. Which ones make sense depends on the
// command; the schema requires at least one.
struct OutputSink {
  std::string csv_path;
  std::string json_path;
  std::string svg_path;
  std::string snapshots_path;
};

struct CommandConfig {
  std::string command;
  nlohmann::json params;
  OutputSink output;
};

// Strict-schema check of a parsed config document. Returns every violation
// (unknown key, missing key, wrong type, out-of-range value), not just the
// first; empty means valid. Physical inputs must be explicit except the
// documented natural-unit defaults c = hbar = mu0 = 1.
std::vector<std::string> validate_config(const nlohmann::json& doc);

// Parses and validates; throws io_error listing all violations.
CommandConfig parse_config(const std::string& text);

// Dispatches a validated config, writes every requested sink, and prints a
// one-line summary (with headline residual norms where applicable) to
// stderr. Throws physics_error / io_error; the binary maps those to exit
// statuses 1 and 2.
void run_command(const CommandConfig& config);

// CSV writer: header line, one row per record, 17 significant digits, LF
// endings. Ragged rows and NaN cells are rejected (naming row and column);
// no NaN ever reaches disk.
void emit_table(const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, const std::string& path);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Standalone SVG line plot, fixed 800x600 viewport, linear axes with tick
// labels, one polyline per series, legend from the labels. Byte-identical
// output for identical input.
void emit_svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                   const std::string& path);

nlohmann::json report_to_json(const ResidualReport& report);

}  // namespace longwave

#endif
