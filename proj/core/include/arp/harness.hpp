#pragma once

// Experiment engine: m independent outer replications of plain runs,
// fixed-period restarts or the adaptive restart procedure, each measured by
// the (pseudo-)time at which the known optimum is first reached. Failure
// curves, confidence intervals and the CSV files are derived from those hit
// times.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arp/algorithm.hpp"
#include "arp/random.hpp"
#include "arp/restart.hpp"
#include "arp/theory.hpp"

namespace arp {

/// Test fixture with an exactly known failure curve. At spawn the instance is
/// absorbed with probability beta and never succeeds; otherwise every step
/// after the first `delay` succeeds independently with probability q. A
/// successful step returns 0, any other step 1, so for target 0 the failure
/// curve is synthetic_basin_curve(beta, q, ., delay).
class SyntheticBasinAlgorithm final : public ResumableAlgorithm {
 public:
  SyntheticBasinAlgorithm(double beta, double q, std::uint64_t seed, std::size_t delay = 0);

  ObjectiveValue step() override;
  std::size_t steps() const noexcept override { return steps_; }
  bool absorbed() const noexcept { return absorbed_; }

  static constexpr ObjectiveValue kOptimum{0.0};

 private:
  double q_;
  std::size_t delay_;
  Rng rng_;
  bool absorbed_;
  std::size_t steps_ = 0;
};

AlgorithmFactory make_synthetic_factory(double beta, double q, std::size_t delay = 0);

enum class Mode { kPlain, kRp, kFixedRestart };

struct ExperimentSpec {
  std::string instance;  // label used in output rows
  AlgorithmFactory factory;
  Mode mode = Mode::kPlain;
  std::size_t restart_period = 0;  // fixed-restart only
  std::size_t m = 1;               // outer replications
  std::uint64_t budget = 1;        // time or pseudo-time horizon T_c
  std::optional<ObjectiveValue> target;
  std::uint64_t master_seed = 0;
  RestartConfig rp;

  /// "plain", "rp" or "fixed-restart(T)".
  std::string mode_label() const;
  /// ConfigError on a missing target, m or budget < 1, period < 1 in
  /// fixed-restart mode, or an invalid restart config.
  void validate() const;
};

struct Interval {
  double low = 0;
  double high = 1;
};

/// Two-sided interval for a binomial proportion at `level`. Normal
/// approximation, switching to Wilson when fewer than 5 successes or failures
/// were observed.
Interval binomial_interval(double p_hat, std::size_t m, double level = 0.99);

struct CurveEstimate {
  std::string instance;
  std::string mode;
  std::size_t m = 0;
  std::uint64_t budget = 0;
  FailureCurve p_hat;  // t = 1..budget
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  std::vector<std::optional<std::uint64_t>> hit_times;  // per outer replication
  std::vector<std::vector<IterationRecord>> traces;     // rp mode only

  double at_budget() const { return p_hat.at(budget); }
};

/// Runs the m outer replications on `workers` threads. Output is identical
/// for every worker count.
CurveEstimate estimate_failure_curve(const ExperimentSpec& spec, std::size_t workers = 1);

/// p_hat(t) = fraction of hit times that are absent or later than t.
FailureCurve failure_curve_from_hits(std::span<const std::optional<std::uint64_t>> hits,
                                     std::uint64_t budget);

/// Restarts a fresh instance every `period` steps (period number j uses
/// replication seed j of `seed`) and records `budget` steps.
Trajectory fixed_restart_run(const AlgorithmFactory& factory, std::size_t period,
                             std::uint64_t budget, std::uint64_t seed);

/// First step at which a fixed-restart run reaches `target`, within `budget`.
std::optional<std::uint64_t> fixed_restart_hit(const AlgorithmFactory& factory, std::size_t period,
                                               std::uint64_t budget, ObjectiveValue target,
                                               std::uint64_t seed);

/// First step at which a single uninterrupted run reaches `target`.
std::optional<std::uint64_t> plain_hit(const AlgorithmFactory& factory, std::uint64_t budget,
                                       ObjectiveValue target, std::uint64_t seed);

struct ComparisonRow {
  std::string instance;
  std::string mode;
  std::uint64_t t_c = 0;
  double fp = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::size_t m = 0;
};

/// One row per estimate at its budget, sorted by instance then mode.
std::vector<ComparisonRow> compare(std::span<const CurveEstimate> estimates);

/// 1 = t_0 < t_1 < ... <= budget, roughly `per_decade` points per decade,
/// always ending at budget.
std::vector<std::uint64_t> log_spaced_points(std::uint64_t budget, std::size_t per_decade = 20);

void write_curve_csv(std::ostream& os, std::span<const CurveEstimate> estimates);
void write_table_csv(std::ostream& os, std::span<const ComparisonRow> rows);
void write_trace_csv(std::ostream& os, std::span<const CurveEstimate> estimates);

/// Shortest round-trip decimal form; locale independent.
std::string format_number(double v);

/// Calls fn(i) for i in [0, n) on up to `workers` threads and rethrows the
/// first exception.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace arp
