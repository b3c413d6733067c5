// arp: adaptive restart experiments from the command line.
//
//   arp check  instance.tsp
//   arp tmin   curve.csv
//   arp solve      --problem instance.tsp --registry data/registry.txt
//   arp experiment --config run.json --workers 4 --output out/

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arp/errors.hpp"
#include "commands.hpp"

namespace {

using arp::cli::RunConfig;

// Flags shared by solve and experiment. Everything is optional so that only
// flags given on the command line override the config file.
struct RunFlags {
  std::string config_file;
  std::string preset;
  std::optional<std::string> problem;
  std::vector<std::string> modes;
  std::optional<std::size_t> m;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> output;
  std::optional<std::string> registry;
  std::optional<double> target;
  std::optional<std::size_t> r0, T0;
  std::optional<double> c1, c2, lambda;
  std::optional<std::size_t> ants, candidates;
  std::optional<double> alpha, beta, rho;
  std::optional<std::string> local_search;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--preset", preset, "Base settings: 'paper'")->check(CLI::IsMember({"paper"}));
    app.add_option("problem,--problem", problem, "path.tsp | boolean:N | synthetic:beta:q[:delay]");
    app.add_option("--mode", modes, "plain | rp | fixed-restart:T (repeatable)");
    app.add_option("-m", m, "Outer replications");
    app.add_option("--budget", budget, "Time or pseudo-time horizon");
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--workers", workers, "Worker threads");
    app.add_option("--output", output, "Output directory (default $ARP_OUTPUT_DIR or arp-out)");
    app.add_option("--registry", registry, "Known-optimum registry file");
    app.add_option("--target", target, "Target objective value");
    app.add_option("--r0", r0);
    app.add_option("--T0", T0);
    app.add_option("--c1", c1);
    app.add_option("--c2", c2);
    app.add_option("--lambda", lambda);
    app.add_option("--ants", ants);
    app.add_option("--alpha", alpha);
    app.add_option("--beta", beta);
    app.add_option("--rho", rho);
    app.add_option("--candidates", candidates);
    app.add_option("--local-search", local_search, "none | 2opt | 2.5opt | 3opt");
  }

  RunConfig build() const {
    RunConfig c = preset == "paper" ? RunConfig::paper_preset() : RunConfig{};
    if (!config_file.empty()) c.merge_file(config_file);
    if (problem) c.problem = *problem;
    if (!modes.empty()) c.modes = modes;
    if (m) c.m = *m;
    if (budget) c.budget = *budget;
    if (seed) c.seed = *seed;
    if (workers) c.workers = *workers;
    if (output) c.output = *output;
    if (registry) c.registry = *registry;
    if (target) c.target = *target;
    if (r0) c.restart.r0 = *r0;
    if (T0) c.restart.T0 = *T0;
    if (c1) c.restart.c1 = *c1;
    if (c2) c.restart.c2 = *c2;
    if (lambda) c.restart.lambda = *lambda;
    if (ants) c.mmas.ants = *ants;
    if (alpha) c.mmas.alpha = *alpha;
    if (beta) c.mmas.beta = *beta;
    if (rho) c.mmas.rho = *rho;
    if (candidates) c.mmas.candidates = *candidates;
    if (local_search) c.mmas.local_search = *local_search;
    if (c.problem.empty()) throw arp::ConfigError("no problem given (--problem or config key 'problem')");
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive restart procedure for stochastic optimizers"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Run one plain or restarted optimization");
  solve_flags.attach(*solve);

  RunFlags exp_flags;
  auto* experiment = app.add_subcommand("experiment", "Estimate failure curves and write CSVs");
  exp_flags.attach(*experiment);

  std::string curve_file;
  auto* tmin = app.add_subcommand("tmin", "Optimal restart time of a failure curve CSV");
  tmin->add_option("curve", curve_file, "CSV with columns t,p")->required();

  std::string instance_file;
  auto* check = app.add_subcommand("check", "Validate a TSPLIB file");
  check->add_option("instance", instance_file, "TSPLIB file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      auto config = solve_flags.build();
      if (solve_flags.modes.empty() && config.modes.size() != 1) config.modes = {"plain"};
      return arp::cli::cmd_solve(config, std::cout, std::cerr);
    }
    if (*experiment) return arp::cli::cmd_experiment(exp_flags.build(), std::cout, std::cerr);
    if (*tmin) return arp::cli::cmd_tmin(curve_file, std::cout);
    if (*check) return arp::cli::cmd_check(instance_file, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "arp: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
