#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "supint/core.hpp"

namespace supint {

struct OutputPaths {
  std::string directory = ".";
  std::string trajectory_csv = "trajectory.csv";
  std::string drift_json = "drift_report.json";
  std::string verify_json = "verify_report.json";
  std::string closed_form_csv = "closed_form.csv";
  std::string comparison_json = "closed_form_comparison.json";
  std::string geometry_json = "geometry.json";
};

// One self-describing JSON config drives every subcommand; unset sections
// fall back to the defaults below. See README for the schema.
struct RunConfig {
  SystemParams system;
  bool has_initial_state = false;
  PhasePoint initial_state;
  std::string scheme = "implicit-midpoint";
  double step = 1e-3;
  double t_final = 10.0;
  int samples = 100;
  std::uint64_t seed = 42;
  double bracket_tol = 1e-9;
  double rank_tol = 1e-8;
  double drift_bound = 1e-8;
  int extra_index = 1;
  std::vector<double> geometry_grid;  // empty -> default log grid
  double potential_k = 1.0;
  OutputPaths outputs;
};

// Parses and validates; error messages name the offending key path.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Normalized JSON with every effective value spelled out; parse_config of the
// result reproduces the same RunConfig, byte for byte on a second dump.
std::string dump_config(const RunConfig& config);

// Locale-independent 17-significant-digit formatting used in all CSV output.
std::string format_double(double v);

// Subcommand bodies; they write the artifacts into outputs.directory and
// print a one-line summary to stdout. Errors surface as exceptions and are
// mapped to exit codes by the CLI driver.
void cmd_simulate(const RunConfig& config);
void cmd_verify(const RunConfig& config);
void cmd_closed_form(const RunConfig& config);
void cmd_geometry(const RunConfig& config);

}  // namespace supint
