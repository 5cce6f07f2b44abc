#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lk/commands.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

lk::RunConfig load(const CommonOpts& opts) {
  lk::RunConfig config = lk::load_config(opts.config_path);
  if (!opts.out_dir.empty())
    config.out_dir = opts.out_dir;
  if (opts.seed)
    config.seed = *opts.seed;
  return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration (JSON)")
      ->required();
  cmd->add_option("--out", opts.out_dir, "Output directory (overrides config)");
  cmd->add_option("--seed", opts.seed, "Seed for sampled checks (overrides config)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewner-Kufarev evolution toolkit"};
  app.require_subcommand(1);

  CommonOpts solve_opts, verify_opts, boundary_opts, residual_opts;
  std::vector<double> boundary_times, boundary_radii;
  bool boundary_force = false;

  CLI::App* solve = app.add_subcommand(
      "solve", "Solve the evolution and write coefficient tables + summary");
  add_common(solve, solve_opts);

  CLI::App* verify = app.add_subcommand(
      "verify-control", "Certify the control-function conditions for the drivers");
  add_common(verify, verify_opts);

  CLI::App* alpha =
      app.add_subcommand("alpha", "Print the univalence threshold constants");

  CLI::App* boundary = app.add_subcommand(
      "boundary", "Sample images of circles |z| = r and emit CSV/SVG");
  add_common(boundary, boundary_opts);
  boundary->add_option("--times", boundary_times, "Times to draw (default: T)");
  boundary->add_option("--radii", boundary_radii, "Radii to draw (default: 0.5, 1)");
  boundary->add_flag("--force", boundary_force,
                     "Draw radii beyond the certified extension cap");

  CLI::App* residual = app.add_subcommand(
      "residual", "Evolution-equation residual and stepper cross-check");
  add_common(residual, residual_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lk::kExitUsage;
  }

  try {
    if (solve->parsed()) {
      lk::RunConfig config = load(solve_opts);
      return lk::cmd_solve(config, config.out_dir, std::cout);
    }
    if (verify->parsed()) {
      lk::RunConfig config = load(verify_opts);
      return lk::cmd_verify_control(config, config.out_dir, std::cout);
    }
    if (alpha->parsed())
      return lk::cmd_alpha(std::cout);
    if (boundary->parsed()) {
      lk::RunConfig config = load(boundary_opts);
      return lk::cmd_boundary(config, config.out_dir, boundary_times,
                              boundary_radii, boundary_force, std::cout);
    }
    if (residual->parsed()) {
      lk::RunConfig config = load(residual_opts);
      return lk::cmd_residual(config, config.out_dir, std::cout);
    }
  } catch (const lk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return lk::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lk::kExitUsage;
  }
  return lk::kExitUsage;
}
