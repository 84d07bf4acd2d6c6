#include "arctic/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

namespace {

using arctic::cli::Command;
using arctic::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& model) {
  sub->add_option("--model", model, "aztec | dyck | red | staircase | staircase-alt | vsasm")->required();
  sub->add_option("--n", cfg.n, "size (vsasm: odd matrix size)");
  sub->add_option("--k", cfg.k, "Dyck offset / number of red paths");
  sub->add_option("--x", cfg.x, "Dyck and red-path shape parameter k/n");
  sub->add_option("--json", cfg.json_path, "also write the JSON report here");
  sub->add_option("--csv", cfg.csv_path, "CSV output path");
  sub->add_option("--tol", cfg.tolerance, "tolerance override")->check(CLI::PositiveNumber);
  sub->add_option("--crossover", cfg.crossover, "largest n evaluated exactly in saddle scans");
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--z-min", cfg.grid.min, "grid minimum");
  sub->add_option("--z-max", cfg.grid.max, "grid maximum");
  sub->add_option("--count", cfg.grid.count, "grid points");
  sub->add_option("--spacing", cfg.grid.spacing, "linear | log");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arctic: exact one-point functions, path oracles and tangent-method arctic curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ARCTIC_VERSION));
  RunConfig cfg;
  std::string model;
  std::map<CLI::App*, Command> cmds;

  auto* verify = app.add_subcommand("verify", "exact determinant, LU and one-point checks");
  add_common(verify, cfg, model);
  cmds[verify] = Command::Verify;

  auto* onepoint = app.add_subcommand("onepoint", "one-point profile H(l) as exact rationals");
  add_common(onepoint, cfg, model);
  onepoint->add_option("--l", cfg.l, "single exit index");
  cmds[onepoint] = Command::OnePoint;

  auto* oracle = app.add_subcommand("oracle", "brute-force path / ASM enumeration against the formulas");
  add_common(oracle, cfg, model);
  oracle->add_option("--dump", cfg.dump_path, "NDJSON dump of enumerated VSASMs");
  cmds[oracle] = Command::Oracle;

  auto* saddle = app.add_subcommand("saddle", "finite-n argmax of H*Y against the analytic saddle");
  add_common(saddle, cfg, model);
  add_grid(saddle, cfg);
  cmds[saddle] = Command::Saddle;

  auto* env = app.add_subcommand("envelope", "tangent family, envelope and residuals");
  add_common(env, cfg, model);
  add_grid(env, cfg);
  env->add_option("--svg", cfg.svg_path, "SVG output path");
  cmds[env] = Command::Envelope;

  auto* curve = app.add_subcommand("curve", "sample the closed-form curve");
  add_common(curve, cfg, model);
  curve->add_option("--samples", cfg.samples, "number of samples");
  cmds[curve] = Command::Curve;

  auto* plot = app.add_subcommand("plot", "SVG of curve, tangents and envelope");
  add_common(plot, cfg, model);
  add_grid(plot, cfg);
  plot->add_option("--svg", cfg.svg_path, "SVG output path")->required();
  cmds[plot] = Command::Plot;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (auto& [sub, c] : cmds)
    if (sub->parsed()) cfg.command = c;
  auto m = arctic::parse_model(model);
  if (!m) {
    std::cerr << "usage error: unknown model '" << model << "'\n";
    return 2;
  }
  cfg.model = *m;
  if (const char* b = std::getenv("ARCTIC_ORACLE_BUDGET")) {
    try {
      cfg.budget = std::stoll(b);
    } catch (...) {
      std::cerr << "usage error: ARCTIC_ORACLE_BUDGET is not an integer\n";
      return 2;
    }
  }
  try {
    return arctic::cli::run(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
