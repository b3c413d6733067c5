#pragma once

// Adaptive restart procedure. Each iteration either adds replications (when
// the estimated optimal restart time sits well inside the current horizon)
// or extends every replication in time. Cost is accounted in pseudo-time:
// the serialized order of all (replication, step) pairs executed.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "arp/algorithm.hpp"
#include "arp/objective.hpp"
#include "arp/theory.hpp"

namespace arp {

/// Increasing lambda over iterations: lambda_k = min(max, start + step * k).
struct LambdaSchedule {
  double step = 0.01;
  double max = 0.95;
};

struct RestartConfig {
  std::size_t r0 = 20;
  std::size_t T0 = 100;
  double c1 = 1.2;  // replication growth
  double c2 = 1.1;  // horizon growth
  double lambda = 0.8;
  std::optional<LambdaSchedule> lambda_schedule;

  /// Throws ConfigError on r0, T0 < 1, c1, c2 <= 1 or lambda outside (0, 1).
  void validate() const;
  double lambda_at(std::size_t k) const noexcept;
};

/// x -> ceil(c * x), forced to exceed x. Products that land within 1e-9 of an
/// integer count as that integer, so ceil(1.1 * 100) is 110 and not 111.
std::size_t grow(std::size_t x, double c);

struct Dimensions {
  std::size_t replications = 0;
  std::size_t horizon = 0;
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// Decision rule: sigma < lambda * T grows replications, otherwise the horizon.
Dimensions next_dimensions(Dimensions current, std::size_t sigma_hat, double lambda,
                           const RestartConfig& config);

// ---------------------------------------------------------------------------
// Pseudo-time accounting

/// Position of one underlying iteration: replication i (1-based), step t.
struct StepRef {
  std::size_t replication = 0;
  std::size_t step = 0;
  friend bool operator==(const StepRef&, const StepRef&) = default;
};

/// Execution-ordered log of (replication, step) pairs, run-length encoded as
/// segments of consecutive steps of one replication.
class PseudoTimeLedger {
 public:
  struct Segment {
    std::size_t replication;
    std::size_t first_step;
    std::size_t last_step;
    std::uint64_t start;  // pseudo-time of first_step, 1-based
  };

  /// Appends the next executed pair. Consecutive steps of the same
  /// replication extend the open segment.
  void record(std::size_t replication, std::size_t step);

  std::uint64_t total() const noexcept { return total_; }
  std::span<const Segment> segments() const noexcept { return segments_; }

  /// Pair executed at pseudo-time `t` (1-based). DomainError when out of range.
  StepRef locate(std::uint64_t t) const;

  /// Visits every pair in execution order.
  template <typename F>
  void for_each(F&& visit) const {
    for (const auto& s : segments_) {
      for (std::size_t step = s.first_step; step <= s.last_step; ++step) visit(StepRef{s.replication, step});
    }
  }

 private:
  std::vector<Segment> segments_;
  std::uint64_t total_ = 0;
};

StepRef pseudo_time_map(const PseudoTimeLedger& ledger, std::uint64_t pseudo_time);

/// Minimum objective over every pair executed at pseudo-time <= `pseudo_time`.
ObjectiveValue best_so_far_at_pseudo_time(const ReplicationPool& pool,
                                          const PseudoTimeLedger& ledger,
                                          std::uint64_t pseudo_time);

// ---------------------------------------------------------------------------
// Surrogate failure curve and restart-time estimate

/// Fraction of replications whose best-so-far at step t still exceeds
/// `y_tilde`, for t = 1..common length. DomainError on an empty pool.
FailureCurve surrogate_failure_curve(const ReplicationPool& pool, ObjectiveValue y_tilde);

/// g(t) = 1 / ((1 - p(t)^(1/t)) p(t)); +inf where p(t) is 0 or 1.
std::vector<double> g_series(const FailureCurve& p_hat);

/// (1 - p(t)^(1/t)) p(t); 0 where p(t) is 0 or 1.
std::vector<double> g_denominator_series(const FailureCurve& p_hat);

/// First interior t (1-based) with g(t-1) > g(t) < g(t+1), where +inf is
/// above every finite value and equal values are not an increase. Returns
/// g.size() when there is no such t.
std::size_t first_relative_minimum(std::span<const double> g);

// ---------------------------------------------------------------------------
// The procedure

/// Summary of one completed iteration; one row of trace.csv.
struct IterationRecord {
  std::size_t k = 0;
  std::size_t r = 0;
  std::size_t T = 0;
  ObjectiveValue y_tilde;
  std::size_t sigma_hat = 0;
  double lambda = 0;
  std::uint64_t pseudo_time = 0;
};

/// Everything derived from the pool at the end of iteration k.
struct RestartState {
  std::size_t k = 0;
  std::size_t r = 0;
  std::size_t T = 0;
  ObjectiveValue y_tilde;
  FailureCurve p_hat;
  std::vector<double> g;
  std::size_t sigma_hat = 0;
};

/// When to stop: always after `budget` pseudo-time units, and optionally as
/// soon as some executed step reaches `target`.
struct StopRule {
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  std::optional<ObjectiveValue> target;
};

struct RpResult;

class RestartProcedure {
 public:
  RestartProcedure(AlgorithmFactory factory, RestartConfig config, std::uint64_t master_seed);

  /// Executes the initial r0 x T0 block and computes iteration 0's state.
  /// Returns false if `stop` fired before the block completed.
  bool initialize(const StopRule& stop = {});

  /// Applies the decision rule to the current state, grows the pool, and
  /// recomputes the state on the enlarged matrix. Returns false if `stop`
  /// fired mid-iteration; the pool is then left non-rectangular and the
  /// state still describes the last completed iteration.
  bool decide_and_grow(const StopRule& stop = {});

  /// initialize() then decide_and_grow() until `stop` fires.
  void run(const StopRule& stop);

  bool initialized() const noexcept { return !trace_.empty(); }
  const RestartState& state() const noexcept { return state_; }
  const std::vector<IterationRecord>& trace() const noexcept { return trace_; }
  const ReplicationPool& pool() const noexcept { return pool_; }
  const PseudoTimeLedger& ledger() const noexcept { return ledger_; }
  const RestartConfig& config() const noexcept { return config_; }

  std::uint64_t pseudo_time() const noexcept { return ledger_.total(); }
  /// Best objective over everything executed, including partial iterations.
  ObjectiveValue best() const noexcept { return best_; }
  /// Pseudo-time at which the stop target was first reached, if it was.
  std::optional<std::uint64_t> target_hit() const noexcept { return target_hit_; }
  bool stopped() const noexcept { return stopped_; }

  /// Moves the run's outputs out; the procedure must not be used afterwards.
  RpResult into_result() &&;

 private:
  bool advance(std::size_t replication, std::size_t to_step, const StopRule& stop);
  void complete_iteration(std::size_t k);

  AlgorithmFactory factory_;
  RestartConfig config_;
  std::uint64_t master_seed_;
  ReplicationPool pool_;
  PseudoTimeLedger ledger_;
  RestartState state_;
  std::vector<IterationRecord> trace_;
  ObjectiveValue best_;
  std::optional<std::uint64_t> target_hit_;
  bool stopped_ = false;
};

/// Result of a complete run; keeps the pool so pseudo-time queries work.
struct RpResult {
  std::vector<IterationRecord> trace;
  RestartState final_state;
  ReplicationPool pool;
  PseudoTimeLedger ledger;
  ObjectiveValue best;
  std::optional<std::uint64_t> target_hit;
};

RpResult run_rp(const AlgorithmFactory& factory, const RestartConfig& config,
                std::uint64_t master_seed, const StopRule& stop);

}  // namespace arp
