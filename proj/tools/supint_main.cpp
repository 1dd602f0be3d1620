#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "supint/errors.hpp"
#include "supint/io.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "path to the JSON run configuration")->required();
  cmd->add_option("--out", opts.out_dir, "output directory (overrides outputs.directory)");
  cmd->add_option("--seed", opts.seed, "sampling seed (overrides verification.seed)")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_flag("--dump-config", opts.dump_config,
                "print the effective configuration as JSON and exit");
}

int run(const CommonOptions& opts, const std::function<void(const supint::RunConfig&)>& body) {
  supint::RunConfig config = supint::load_config(opts.config_path);
  if (!opts.out_dir.empty()) config.outputs.directory = opts.out_dir;
  if (opts.seed_set) config.seed = opts.seed;
  if (opts.dump_config) {
    std::cout << supint::dump_config(config);
    return 0;
  }
  body(config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and certification toolkit for a maximally superintegrable "
               "Hamiltonian family"};
  app.require_subcommand(1);

  CommonOptions simulate_opts, verify_opts, closed_opts, geometry_opts;
  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate the equations of motion, emit CSV + drift report");
  add_common(simulate, simulate_opts);
  CLI::App* verify =
      app.add_subcommand("verify", "certify involution, independence and algebraic identities");
  add_common(verify, verify_opts);
  CLI::App* closed =
      app.add_subcommand("closed-form", "evaluate the exact solution and compare to the integrator");
  add_common(closed, closed_opts);
  CLI::App* geometry =
      app.add_subcommand("geometry", "tabulate curvature, Green function and intrinsic potentials");
  add_common(geometry, geometry_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run(simulate_opts, supint::cmd_simulate);
    if (verify->parsed()) return run(verify_opts, supint::cmd_verify);
    if (closed->parsed()) return run(closed_opts, supint::cmd_closed_form);
    if (geometry->parsed()) return run(geometry_opts, supint::cmd_geometry);
  } catch (const supint::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const supint::UnsupportedRegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const supint::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
