#include "arp/restart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "arp/errors.hpp"

namespace arp {

void RestartConfig::validate() const {
  if (r0 < 1) throw ConfigError("r0 must be >= 1");
  if (T0 < 1) throw ConfigError("T0 must be >= 1");
  if (!(c1 > 1.0)) throw ConfigError("c1 must be > 1");
  if (!(c2 > 1.0)) throw ConfigError("c2 must be > 1");
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must be in (0, 1)");
  if (lambda_schedule) {
    if (!(lambda_schedule->step >= 0.0)) throw ConfigError("lambda schedule step must be >= 0");
    if (!(lambda_schedule->max > 0.0 && lambda_schedule->max < 1.0)) {
      throw ConfigError("lambda schedule max must be in (0, 1)");
    }
  }
}

double RestartConfig::lambda_at(std::size_t k) const noexcept {
  if (!lambda_schedule) return lambda;
  return std::min(lambda_schedule->max, lambda + lambda_schedule->step * static_cast<double>(k));
}

std::size_t grow(std::size_t x, double c) {
  const double scaled = c * static_cast<double>(x);
  const double nearest = std::round(scaled);
  const double target = std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, scaled) ? nearest
                                                                                   : std::ceil(scaled);
  return std::max(x + 1, static_cast<std::size_t>(target));
}

Dimensions next_dimensions(Dimensions current, std::size_t sigma_hat, double lambda,
                           const RestartConfig& config) {
  if (static_cast<double>(sigma_hat) < lambda * static_cast<double>(current.horizon)) {
    return {grow(current.replications, config.c1), current.horizon};
  }
  return {current.replications, grow(current.horizon, config.c2)};
}

// ---------------------------------------------------------------------------

void PseudoTimeLedger::record(std::size_t replication, std::size_t step) {
  ++total_;
  if (!segments_.empty()) {
    auto& open = segments_.back();
    if (open.replication == replication && open.last_step + 1 == step) {
      open.last_step = step;
      return;
    }
  }
  segments_.push_back(Segment{replication, step, step, total_});
}

StepRef PseudoTimeLedger::locate(std::uint64_t t) const {
  if (t < 1 || t > total_) {
    throw DomainError("pseudo-time " + std::to_string(t) + " outside [1, " +
                      std::to_string(total_) + "]");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](std::uint64_t v, const Segment& s) { return v < s.start; });
  const Segment& s = *std::prev(it);
  return StepRef{s.replication, s.first_step + static_cast<std::size_t>(t - s.start)};
}

StepRef pseudo_time_map(const PseudoTimeLedger& ledger, std::uint64_t pseudo_time) {
  return ledger.locate(pseudo_time);
}

ObjectiveValue best_so_far_at_pseudo_time(const ReplicationPool& pool,
                                          const PseudoTimeLedger& ledger,
                                          std::uint64_t pseudo_time) {
  if (pseudo_time < 1 || pseudo_time > ledger.total()) {
    throw DomainError("pseudo-time " + std::to_string(pseudo_time) + " outside [1, " +
                      std::to_string(ledger.total()) + "]");
  }
  // A replication's best at step s covers all of its steps up to s, each of
  // which was executed no later than s itself.
  ObjectiveValue best;
  for (const auto& seg : ledger.segments()) {
    if (seg.start > pseudo_time) break;
    const std::size_t last =
        std::min<std::uint64_t>(seg.last_step, seg.first_step + (pseudo_time - seg.start));
    best = std::min(best, pool[seg.replication - 1].trajectory.best(last));
  }
  return best;
}

// ---------------------------------------------------------------------------

FailureCurve surrogate_failure_curve(const ReplicationPool& pool, ObjectiveValue y_tilde) {
  if (pool.empty()) throw DomainError("surrogate_failure_curve: empty pool");
  const std::size_t horizon = pool.common_length();
  // exceed[t] = number of replications whose first step at or below y_tilde is t+1.
  std::vector<std::size_t> first_hit(horizon + 1, 0);
  for (const auto& rep : pool) {
    const auto best = rep.trajectory.best_series().first(horizon);
    const auto it = std::partition_point(best.begin(), best.end(),
                                         [&](ObjectiveValue v) { return v > y_tilde; });
    ++first_hit[static_cast<std::size_t>(it - best.begin())];
  }
  const double r = static_cast<double>(pool.size());
  std::vector<double> p(horizon);
  std::size_t still_above = pool.size();
  for (std::size_t t = 1; t <= horizon; ++t) {
    still_above -= first_hit[t - 1];
    p[t - 1] = static_cast<double>(still_above) / r;
  }
  return FailureCurve(std::move(p));
}

std::vector<double> g_series(const FailureCurve& p_hat) {
  std::vector<double> g(p_hat.length());
  for (std::size_t t = 1; t <= g.size(); ++t) g[t - 1] = g_value(p_hat.at(t), t);
  return g;
}

std::vector<double> g_denominator_series(const FailureCurve& p_hat) {
  std::vector<double> d(p_hat.length());
  for (std::size_t t = 1; t <= d.size(); ++t) {
    const double p = p_hat.at(t);
    d[t - 1] = (p <= 0.0 || p >= 1.0) ? 0.0
                                      : -std::expm1(std::log(p) / static_cast<double>(t)) * p;
  }
  return d;
}

std::size_t first_relative_minimum(std::span<const double> g) {
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (g[i - 1] > g[i] && g[i] < g[i + 1]) return i + 1;
  }
  return g.size();
}

// ---------------------------------------------------------------------------

RestartProcedure::RestartProcedure(AlgorithmFactory factory, RestartConfig config,
                                   std::uint64_t master_seed)
    : factory_(std::move(factory)), config_(config), master_seed_(master_seed) {
  config_.validate();
}

bool RestartProcedure::advance(std::size_t replication, std::size_t to_step,
                               const StopRule& stop) {
  while (pool_.size() < replication) {
    pool_.push_back(spawn_replication(factory_, master_seed_, pool_.size() + 1));
  }
  Replication& rep = pool_[replication - 1];
  rep.trajectory.reserve(to_step);
  while (rep.trajectory.length() < to_step) {
    if (ledger_.total() >= stop.budget) {
      stopped_ = true;
      return false;
    }
    const ObjectiveValue v = rep.algorithm->step();
    rep.trajectory.append(v);
    ledger_.record(replication, rep.trajectory.length());
    best_ = std::min(best_, v);
    if (stop.target && v <= *stop.target) {
      target_hit_ = ledger_.total();
      stopped_ = true;
      return false;
    }
  }
  return true;
}

void RestartProcedure::complete_iteration(std::size_t k) {
  state_.k = k;
  state_.r = pool_.size();
  state_.T = pool_.common_length();
  state_.y_tilde = pool_.minimum();
  state_.p_hat = surrogate_failure_curve(pool_, state_.y_tilde);
  state_.g = g_series(state_.p_hat);
  state_.sigma_hat = first_relative_minimum(state_.g);
  trace_.push_back(IterationRecord{k, state_.r, state_.T, state_.y_tilde, state_.sigma_hat,
                                   config_.lambda_at(k), ledger_.total()});
}

bool RestartProcedure::initialize(const StopRule& stop) {
  if (initialized() || !pool_.empty()) throw ContractViolation("RestartProcedure already started");
  for (std::size_t i = 1; i <= config_.r0; ++i) {
    if (!advance(i, config_.T0, stop)) return false;
  }
  complete_iteration(0);
  return true;
}

bool RestartProcedure::decide_and_grow(const StopRule& stop) {
  if (!initialized()) throw ContractViolation("decide_and_grow before initialize");
  if (stopped_) return false;
  const std::size_t k = state_.k;
  const Dimensions next =
      next_dimensions({state_.r, state_.T}, state_.sigma_hat, config_.lambda_at(k), config_);
  if (next.replications > state_.r) {
    for (std::size_t i = state_.r + 1; i <= next.replications; ++i) {
      if (!advance(i, next.horizon, stop)) return false;
    }
  } else {
    for (std::size_t i = 1; i <= state_.r; ++i) {
      if (!advance(i, next.horizon, stop)) return false;
    }
  }
  complete_iteration(k + 1);
  return true;
}

void RestartProcedure::run(const StopRule& stop) {
  if (stop.budget == 0) throw ConfigError("pseudo-time budget must be >= 1");
  if (!initialized() && !initialize(stop)) return;
  while (decide_and_grow(stop)) {
  }
}

RpResult RestartProcedure::into_result() && {
  return RpResult{std::move(trace_), std::move(state_), std::move(pool_),
                  std::move(ledger_), best_, target_hit_};
}

RpResult run_rp(const AlgorithmFactory& factory, const RestartConfig& config,
                std::uint64_t master_seed, const StopRule& stop) {
  RestartProcedure rp(factory, config, master_seed);
  rp.run(stop);
  return std::move(rp).into_result();
}

}  // namespace arp
