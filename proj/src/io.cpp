#include "supint/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "supint/algebra.hpp"
#include "supint/closedform.hpp"
#include "supint/dynamics.hpp"
#include "supint/geometry.hpp"
#include "supint/poisson.hpp"

namespace supint {

namespace {

using nlohmann::json;

double require_number(const json& node, const std::string& path) {
  if (!node.is_number()) throw ValidationError(path + ": must be a number");
  return node.get<double>();
}

std::vector<double> require_vector(const json& node, const std::string& path) {
  if (!node.is_array()) throw ValidationError(path + ": must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(require_number(node[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> default_geometry_grid() {
  // r = 0 plus a log grid over [1e-2, 1e3].
  std::vector<double> grid{0.0};
  const int per_decade = 6;
  const int decades = 5;
  for (int k = 0; k <= per_decade * decades; ++k)
    grid.push_back(std::pow(10.0, -2.0 + static_cast<double>(k) / per_decade));
  return grid;
}

std::filesystem::path out_path(const RunConfig& config, const std::string& file) {
  const std::filesystem::path dir(config.outputs.directory);
  std::filesystem::create_directories(dir);
  return dir / file;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw ValidationError("cannot open output file " + path.string());
  stream << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json drift_report_json(const DriftReport& report, const RunConfig& config) {
  json entries = json::array();
  for (const auto& entry : report.entries)
    entries.push_back({{"name", entry.name},
                       {"initial", entry.initial},
                       {"max_relative_drift", entry.max_rel_drift}});
  return json{{"bound", report.bound},
              {"entries", entries},
              {"pass", report.pass},
              {"scheme", config.scheme},
              {"step", config.step},
              {"t_final", config.t_final}};
}

std::string trajectory_csv_text(const Trajectory& traj,
                                std::span<const PhaseFunction> integral_set) {
  const int n = traj.params.n;
  std::string text;
  text += "t";
  for (int i = 1; i <= n; ++i) text += ",q" + std::to_string(i);
  for (int i = 1; i <= n; ++i) text += ",p" + std::to_string(i);
  text += ",H";
  // The set's leading member is H itself and already has its column.
  for (std::size_t f = 1; f < integral_set.size(); ++f) text += "," + integral_set[f].name();
  text += "\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const PhasePoint& s = traj.states[k];
    text += format_double(traj.times[k]);
    for (double v : s.q) text += "," + format_double(v);
    for (double v : s.p) text += "," + format_double(v);
    text += "," + format_double(hamiltonian(traj.params, s));
    for (std::size_t f = 1; f < integral_set.size(); ++f)
      text += "," + format_double(integral_set[f](s));
    text += "\n";
  }
  return text;
}

std::string states_csv_text(const Trajectory& traj) {
  const int n = traj.params.n;
  std::string text;
  text += "t";
  for (int i = 1; i <= n; ++i) text += ",q" + std::to_string(i);
  for (int i = 1; i <= n; ++i) text += ",p" + std::to_string(i);
  text += "\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    text += format_double(traj.times[k]);
    for (double v : traj.states[k].q) text += "," + format_double(v);
    for (double v : traj.states[k].p) text += "," + format_double(v);
    text += "\n";
  }
  return text;
}

void require_initial_state(const RunConfig& config, const char* command) {
  if (!config.has_initial_state)
    throw ValidationError(std::string("initial_state: required by the ") + command + " command");
}

}  // namespace

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");

  RunConfig config;

  if (!j.contains("system")) throw ValidationError("system: section is required");
  {
    const json& sys = j["system"];
    if (!sys.is_object()) throw ValidationError("system: must be an object");
    if (!sys.contains("n") || !sys["n"].is_number_integer())
      throw ValidationError("system.n: integer required");
    const int n = sys["n"].get<int>();
    const double kappa = sys.contains("kappa") ? require_number(sys["kappa"], "system.kappa") : 1.0;
    const double omega_sq =
        sys.contains("omega_sq") ? require_number(sys["omega_sq"], "system.omega_sq") : 0.0;
    std::vector<double> b(static_cast<std::size_t>(std::max(n, 0)), 0.0);
    if (sys.contains("b")) b = require_vector(sys["b"], "system.b");
    config.system = SystemParams::make(n, kappa, omega_sq, std::move(b));
  }

  if (j.contains("initial_state")) {
    const json& init = j["initial_state"];
    if (!init.is_object() || !init.contains("q") || !init.contains("p"))
      throw ValidationError("initial_state: must contain arrays q and p");
    config.initial_state.q = require_vector(init["q"], "initial_state.q");
    config.initial_state.p = require_vector(init["p"], "initial_state.p");
    config.has_initial_state = true;
    validate_state(config.system, config.initial_state);
  }

  if (j.contains("integrator")) {
    const json& integ = j["integrator"];
    if (integ.contains("scheme")) {
      if (!integ["scheme"].is_string())
        throw ValidationError("integrator.scheme: must be a string");
      config.scheme = integ["scheme"].get<std::string>();
      scheme_from_string(config.scheme);  // validates
    }
    if (integ.contains("step")) config.step = require_number(integ["step"], "integrator.step");
    if (integ.contains("t_final"))
      config.t_final = require_number(integ["t_final"], "integrator.t_final");
    if (!(config.step > 0.0)) throw ValidationError("integrator.step: must be > 0");
    if (!(config.t_final >= 0.0)) throw ValidationError("integrator.t_final: must be >= 0");
  }

  if (j.contains("verification")) {
    const json& ver = j["verification"];
    if (ver.contains("samples")) {
      if (!ver["samples"].is_number_integer() || ver["samples"].get<int>() < 1)
        throw ValidationError("verification.samples: positive integer required");
      config.samples = ver["samples"].get<int>();
    }
    if (ver.contains("seed")) {
      if (!ver["seed"].is_number_unsigned() && !ver["seed"].is_number_integer())
        throw ValidationError("verification.seed: unsigned integer required");
      config.seed = ver["seed"].get<std::uint64_t>();
    }
    if (ver.contains("bracket_tol"))
      config.bracket_tol = require_number(ver["bracket_tol"], "verification.bracket_tol");
    if (ver.contains("rank_tol"))
      config.rank_tol = require_number(ver["rank_tol"], "verification.rank_tol");
    if (ver.contains("drift_bound"))
      config.drift_bound = require_number(ver["drift_bound"], "verification.drift_bound");
    if (ver.contains("extra_index")) {
      if (!ver["extra_index"].is_number_integer())
        throw ValidationError("verification.extra_index: integer required");
      config.extra_index = ver["extra_index"].get<int>();
    }
    if (!(config.bracket_tol > 0.0))
      throw ValidationError("verification.bracket_tol: must be > 0");
    if (!(config.rank_tol > 0.0)) throw ValidationError("verification.rank_tol: must be > 0");
    if (!(config.drift_bound > 0.0))
      throw ValidationError("verification.drift_bound: must be > 0");
    if (config.extra_index < 1 || config.extra_index > config.system.n)
      throw ValidationError("verification.extra_index: outside [1, n]");
  }

  if (j.contains("geometry")) {
    const json& geo = j["geometry"];
    if (geo.contains("grid")) {
      config.geometry_grid = require_vector(geo["grid"], "geometry.grid");
      for (std::size_t i = 0; i < config.geometry_grid.size(); ++i)
        if (config.geometry_grid[i] < 0.0)
          throw ValidationError("geometry.grid[" + std::to_string(i) + "]: must be >= 0");
    }
    if (geo.contains("potential_k"))
      config.potential_k = require_number(geo["potential_k"], "geometry.potential_k");
  }

  if (j.contains("outputs")) {
    const json& out = j["outputs"];
    auto get_string = [&](const char* key, std::string& target) {
      if (out.contains(key)) {
        if (!out[key].is_string())
          throw ValidationError(std::string("outputs.") + key + ": must be a string");
        target = out[key].get<std::string>();
      }
    };
    get_string("directory", config.outputs.directory);
    get_string("trajectory_csv", config.outputs.trajectory_csv);
    get_string("drift_json", config.outputs.drift_json);
    get_string("verify_json", config.outputs.verify_json);
    get_string("closed_form_csv", config.outputs.closed_form_csv);
    get_string("comparison_json", config.outputs.comparison_json);
    get_string("geometry_json", config.outputs.geometry_json);
  }

  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw ValidationError("cannot open config file " + path);
  std::ostringstream text;
  text << stream.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const RunConfig& config) {
  json j;
  j["system"] = {{"n", config.system.n},
                 {"kappa", config.system.kappa},
                 {"omega_sq", config.system.omega_sq},
                 {"b", config.system.b}};
  if (config.has_initial_state)
    j["initial_state"] = {{"q", config.initial_state.q}, {"p", config.initial_state.p}};
  j["integrator"] = {
      {"scheme", config.scheme}, {"step", config.step}, {"t_final", config.t_final}};
  j["verification"] = {{"samples", config.samples},
                       {"seed", config.seed},
                       {"bracket_tol", config.bracket_tol},
                       {"rank_tol", config.rank_tol},
                       {"drift_bound", config.drift_bound},
                       {"extra_index", config.extra_index}};
  j["geometry"] = {{"grid", config.geometry_grid.empty() ? default_geometry_grid()
                                                         : config.geometry_grid},
                   {"potential_k", config.potential_k}};
  j["outputs"] = {{"directory", config.outputs.directory},
                  {"trajectory_csv", config.outputs.trajectory_csv},
                  {"drift_json", config.outputs.drift_json},
                  {"verify_json", config.outputs.verify_json},
                  {"closed_form_csv", config.outputs.closed_form_csv},
                  {"comparison_json", config.outputs.comparison_json},
                  {"geometry_json", config.outputs.geometry_json}};
  return j.dump(2) + "\n";
}

void cmd_simulate(const RunConfig& config) {
  require_initial_state(config, "simulate");
  const Trajectory traj = integrate(config.system, config.initial_state, config.t_final,
                                    config.step, scheme_from_string(config.scheme));
  const std::vector<PhaseFunction> set =
      full_integral_set_functions(config.system, config.extra_index);

  write_text(out_path(config, config.outputs.trajectory_csv), trajectory_csv_text(traj, set));

  const DriftReport report = drift_report(traj, set, config.drift_bound);
  write_json(out_path(config, config.outputs.drift_json), drift_report_json(report, config));

  std::cout << "simulate: " << traj.states.size() << " samples, drift "
            << (report.pass ? "pass" : "FAIL") << "\n";
}

void cmd_verify(const RunConfig& config) {
  const SystemParams& params = config.system;
  json checks = json::array();
  bool all_pass = true;

  for (FamilyKind kind :
       {FamilyKind::left_casimirs, FamilyKind::right_casimirs, FamilyKind::extra_integrals}) {
    const std::vector<PhaseFunction> family = family_functions(params, kind);
    const BracketReport report =
        involution_report(family, params, config.samples, config.bracket_tol, config.seed);
    all_pass = all_pass && report.pass;
    checks.push_back({{"name", std::string("involution ") + family_kind_name(kind)},
                      {"max_residual", report.max_abs},
                      {"tolerance", report.tol},
                      {"pass", report.pass}});
  }

  const std::vector<PhaseFunction> set = full_integral_set_functions(params, config.extra_index);
  const int expected_rank = 2 * params.n - 1;
  {
    StateSampler sampler(params, config.seed);
    const int rank_samples = std::min(config.samples, 20);
    int min_rank = expected_rank, max_rank = 0;
    bool maximal_ok = true;
    for (int k = 0; k < rank_samples; ++k) {
      const PhasePoint s = sampler.next();
      const int rank = independence_rank(set, s, config.rank_tol);
      min_rank = std::min(min_rank, rank);
      max_rank = std::max(max_rank, rank);
      for (int extra = 1; extra <= params.n; ++extra) {
        if (extra == config.extra_index) continue;
        std::vector<PhaseFunction> enlarged = set;
        enlarged.push_back(extra_integral_function(params, extra));
        if (independence_rank(enlarged, s, config.rank_tol) > expected_rank) maximal_ok = false;
      }
    }
    const bool rank_pass = min_rank == expected_rank && max_rank == expected_rank;
    all_pass = all_pass && rank_pass && maximal_ok;
    checks.push_back({{"name", "independence rank"},
                      {"rank", min_rank},
                      {"expected", expected_rank},
                      {"tolerance", config.rank_tol},
                      {"pass", rank_pass}});
    checks.push_back({{"name", "rank maximality"},
                      {"expected", expected_rank},
                      {"tolerance", config.rank_tol},
                      {"pass", maximal_ok}});
  }

  {
    StateSampler sampler(params, config.seed);
    double max_sum_residual = 0.0;
    for (int k = 0; k < config.samples; ++k) {
      const PhasePoint s = sampler.next();
      double sum = 0.0;
      for (int i = 1; i <= params.n; ++i) sum += extra_integral(params, s, i);
      const double rhs = params.kappa * hamiltonian_natural(params, s);
      max_sum_residual =
          std::max(max_sum_residual, std::abs(sum - rhs) / std::max(1.0, std::abs(rhs)));
    }
    const bool pass = max_sum_residual < 1e-12;
    all_pass = all_pass && pass;
    checks.push_back({{"name", "sum identity"},
                      {"max_residual", max_sum_residual},
                      {"tolerance", 1e-12},
                      {"pass", pass}});
  }

  {
    const PhaseFunction jm = j_minus_function(params);
    const PhaseFunction j0 = j_zero_function(params);
    const PhaseFunction jp = j_plus_function(params);
    StateSampler sampler(params, config.seed);
    double max_residual = 0.0;
    for (int k = 0; k < config.samples; ++k) {
      const PhasePoint s = sampler.next();
      const SL2Generators gen = realize_sl2(params, s);
      max_residual =
          std::max(max_residual, std::abs(poisson_bracket(j0, jp, s) - 2.0 * gen.j_plus));
      max_residual =
          std::max(max_residual, std::abs(poisson_bracket(j0, jm, s) + 2.0 * gen.j_minus));
      max_residual =
          std::max(max_residual, std::abs(poisson_bracket(jm, jp, s) - 4.0 * gen.j_zero));
    }
    const bool pass = max_residual < 1e-10;
    all_pass = all_pass && pass;
    checks.push_back({{"name", "lie-poisson relations"},
                      {"max_residual", max_residual},
                      {"tolerance", 1e-10},
                      {"pass", pass}});
  }

  const json report{{"checks", checks},
                    {"n", params.n},
                    {"n_samples", config.samples},
                    {"pass", all_pass},
                    {"seed", config.seed}};
  write_json(out_path(config, config.outputs.verify_json), report);
  std::cout << "verify: " << (all_pass ? "pass" : "FAIL") << "\n";
}

void cmd_closed_form(const RunConfig& config) {
  require_initial_state(config, "closed-form");
  const std::vector<double> times = sample_times(config.t_final, config.step);

  const Trajectory exact = trajectory_closed_form(config.system, config.initial_state, times);
  const Trajectory numeric = integrate(config.system, config.initial_state, config.t_final,
                                       config.step, scheme_from_string(config.scheme));

  write_text(out_path(config, config.outputs.closed_form_csv), states_csv_text(exact));

  double max_dq = 0.0, max_dp = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t i = 0; i < exact.states[k].q.size(); ++i) {
      max_dq = std::max(max_dq, std::abs(exact.states[k].q[i] - numeric.states[k].q[i]));
      max_dp = std::max(max_dp, std::abs(exact.states[k].p[i] - numeric.states[k].p[i]));
    }
  }
  const json comparison{{"max_position_deviation", max_dq},
                        {"max_momentum_deviation", max_dp},
                        {"samples", times.size()},
                        {"scheme", config.scheme},
                        {"step", config.step},
                        {"t_final", config.t_final}};
  write_json(out_path(config, config.outputs.comparison_json), comparison);
  std::cout << "closed-form: max |dq| = " << max_dq << ", max |dp| = " << max_dp << "\n";
}

void cmd_geometry(const RunConfig& config) {
  const SystemParams& params = config.system;
  const std::vector<double> grid =
      config.geometry_grid.empty() ? default_geometry_grid() : config.geometry_grid;

  json rows = json::array();
  for (double r : grid) {
    std::vector<double> q(static_cast<std::size_t>(params.n), 0.0);
    q[0] = r;
    json row;
    row["r"] = r;
    row["conformal_factor"] = params.kappa + r * r;
    row["scalar_curvature"] = scalar_curvature(params, q);
    if (r > 0.0) {
      row["green_function"] = green_function(params, r);
      row["harmonicity_residual"] =
          std::abs(laplace_beltrami_radial(params, green_function_profile(params), r));
      const IntrinsicPotentials pots = intrinsic_potentials(params, config.potential_k, q);
      row["v_kepler"] = pots.kepler;
      row["v_harm"] = pots.harm;
    } else {
      row["green_function"] = nullptr;
      row["harmonicity_residual"] = nullptr;
      row["v_kepler"] = nullptr;
      row["v_harm"] = 0.0;
    }
    rows.push_back(std::move(row));
  }

  const json table{{"grid", grid},
                   {"kappa", params.kappa},
                   {"n", params.n},
                   {"potential_k", config.potential_k},
                   {"rows", rows}};
  write_json(out_path(config, config.outputs.geometry_json), table);
  std::cout << "geometry: " << grid.size() << " grid rows\n";
}

}  // namespace supint
