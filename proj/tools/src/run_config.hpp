#pragma once

// Configuration for the `arp` command line tool: a JSON document whose keys
// mirror the command line flags. Layering is preset, then file, then flags.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "arp/harness.hpp"
#include "arp/mmas.hpp"
#include "arp/restart.hpp"

namespace arp::cli {

/// What to optimize, parsed from "path.tsp", "boolean:N" or
/// "synthetic:beta:q[:delay]".
struct ProblemRef {
  enum class Kind { kTsp, kBoolean, kSynthetic };
  Kind kind = Kind::kTsp;
  std::string path;  // kTsp
  std::size_t bits = 0;
  double beta = 0;
  double q = 0;
  std::size_t delay = 0;

  static ProblemRef parse(std::string_view text);
};

/// "plain", "rp" or "fixed-restart:T".
struct ModeRef {
  Mode mode = Mode::kPlain;
  std::size_t period = 0;

  static ModeRef parse(std::string_view text);
};

/// MMAS fields that the user actually set; the rest come from the problem's
/// defaults (TSP or bitstring) at resolve time.
struct MmasOverrides {
  std::optional<std::size_t> ants;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> rho;
  std::optional<std::size_t> candidates;
  std::optional<std::string> local_search;
  std::optional<std::size_t> best_so_far_period;

  MmasConfig resolve(MmasConfig base) const;
};

struct RunConfig {
  std::string problem;
  std::vector<std::string> modes{"plain", "rp"};
  std::size_t m = 10;
  std::uint64_t budget = 10000;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string output;  // empty: $ARP_OUTPUT_DIR, else "arp-out"
  std::string registry;
  std::optional<double> target;
  RestartConfig restart;
  MmasOverrides mmas;

  /// Restart settings and MMAS defaults as used in the published experiments.
  static RunConfig paper_preset();

  /// Overlays the keys present in `doc`. ConfigError naming the key on an
  /// unknown key or a value of the wrong type.
  void merge(const nlohmann::json& doc);
  void merge_file(const std::filesystem::path& path);

  std::filesystem::path output_dir() const;
};

/// Everything needed to run experiments, derived from a RunConfig.
struct ResolvedProblem {
  std::string instance;
  AlgorithmFactory factory;
  std::optional<ObjectiveValue> target;
};

/// Loads the instance and builds the factory. The target comes from, in
/// order: `target`, the registry, the analytic optimum.
ResolvedProblem resolve_problem(const RunConfig& config);

/// One ExperimentSpec per configured mode.
std::vector<ExperimentSpec> build_specs(const RunConfig& config, const ResolvedProblem& problem);

}  // namespace arp::cli
