#include "arp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "arp/errors.hpp"
#include "arp/random.hpp"

namespace arp {

SyntheticBasinAlgorithm::SyntheticBasinAlgorithm(double beta, double q, std::uint64_t seed,
                                                 std::size_t delay)
    : q_(q), delay_(delay), rng_(seed) {
  absorbed_ = uniform01(rng_) < beta;
}

ObjectiveValue SyntheticBasinAlgorithm::step() {
  ++steps_;
  if (absorbed_ || steps_ <= delay_) return ObjectiveValue(1.0);
  return uniform01(rng_) < q_ ? kOptimum : ObjectiveValue(1.0);
}

AlgorithmFactory make_synthetic_factory(double beta, double q, std::size_t delay) {
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("synthetic beta must be in [0, 1)");
  if (!(q > 0.0 && q <= 1.0)) throw ConfigError("synthetic q must be in (0, 1]");
  return [beta, q, delay](std::uint64_t seed) -> std::unique_ptr<ResumableAlgorithm> {
    return std::make_unique<SyntheticBasinAlgorithm>(beta, q, seed, delay);
  };
}

// ---------------------------------------------------------------------------

std::string ExperimentSpec::mode_label() const {
  switch (mode) {
    case Mode::kPlain: return "plain";
    case Mode::kRp: return "rp";
    case Mode::kFixedRestart: return "fixed-restart(" + std::to_string(restart_period) + ")";
  }
  return "?";
}

void ExperimentSpec::validate() const {
  if (!factory) throw ConfigError("experiment has no algorithm");
  if (!target) throw ConfigError("experiment needs a target value (known optimum)");
  if (m < 1) throw ConfigError("m must be >= 1");
  if (budget < 1) throw ConfigError("budget must be >= 1");
  if (mode == Mode::kFixedRestart && restart_period < 1) throw ConfigError("restart_period must be >= 1");
  if (mode == Mode::kRp) rp.validate();
}

namespace {

// Two-sided standard normal quantile by bisection on erfc; only called with
// a handful of levels.
double normal_quantile(double level) {
  const double tail = (1.0 - level) / 2.0;
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::sqrt(2.0)) > tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Interval binomial_interval(double p_hat, std::size_t m, double level) {
  if (m == 0) return {0.0, 1.0};
  static const double z99 = normal_quantile(0.99);
  const double z = level == 0.99 ? z99 : normal_quantile(level);
  const double n = static_cast<double>(m);
  if (p_hat * n < 5.0 || (1.0 - p_hat) * n < 5.0) {
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
  }
  const double half = z * std::sqrt(p_hat * (1.0 - p_hat) / n);
  return {std::max(0.0, p_hat - half), std::min(1.0, p_hat + half)};
}

// ---------------------------------------------------------------------------

Trajectory fixed_restart_run(const AlgorithmFactory& factory, std::size_t period,
                             std::uint64_t budget, std::uint64_t seed) {
  if (period < 1) throw ContractViolation("fixed_restart_run: period must be >= 1");
  Trajectory traj(seed);
  traj.reserve(budget);
  std::unique_ptr<ResumableAlgorithm> algo;
  for (std::uint64_t s = 0; s < budget; ++s) {
    if (s % period == 0) algo = factory(replication_seed(seed, s / period + 1));
    traj.append(algo->step());
  }
  return traj;
}

std::optional<std::uint64_t> fixed_restart_hit(const AlgorithmFactory& factory, std::size_t period,
                                               std::uint64_t budget, ObjectiveValue target,
                                               std::uint64_t seed) {
  if (period < 1) throw ContractViolation("fixed_restart_hit: period must be >= 1");
  std::unique_ptr<ResumableAlgorithm> algo;
  for (std::uint64_t s = 0; s < budget; ++s) {
    if (s % period == 0) algo = factory(replication_seed(seed, s / period + 1));
    if (algo->step() <= target) return s + 1;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> plain_hit(const AlgorithmFactory& factory, std::uint64_t budget,
                                       ObjectiveValue target, std::uint64_t seed) {
  // Same seed as replication 1 of a restart run, so the first restart period
  // replays the plain run exactly.
  auto algo = factory(replication_seed(seed, 1));
  for (std::uint64_t s = 1; s <= budget; ++s) {
    if (algo->step() <= target) return s;
  }
  return std::nullopt;
}

FailureCurve failure_curve_from_hits(std::span<const std::optional<std::uint64_t>> hits,
                                     std::uint64_t budget) {
  std::vector<std::size_t> hits_at(budget + 1, 0);
  for (const auto& h : hits) {
    if (h && *h <= budget) ++hits_at[*h];
  }
  std::vector<double> p(budget);
  std::size_t failing = hits.size();
  const double m = static_cast<double>(hits.size());
  for (std::uint64_t t = 1; t <= budget; ++t) {
    failing -= hits_at[t];
    p[t - 1] = static_cast<double>(failing) / m;
  }
  return FailureCurve(std::move(p));
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

CurveEstimate estimate_failure_curve(const ExperimentSpec& spec, std::size_t workers) {
  spec.validate();
  CurveEstimate out;
  out.instance = spec.instance;
  out.mode = spec.mode_label();
  out.m = spec.m;
  out.budget = spec.budget;
  out.hit_times.resize(spec.m);
  if (spec.mode == Mode::kRp) out.traces.resize(spec.m);

  const ObjectiveValue target = *spec.target;
  parallel_for(spec.m, workers, [&](std::size_t j) {
    const std::uint64_t seed = derive_seed(spec.master_seed, j + 1);
    switch (spec.mode) {
      case Mode::kPlain:
        out.hit_times[j] = plain_hit(spec.factory, spec.budget, target, seed);
        break;
      case Mode::kFixedRestart:
        out.hit_times[j] = fixed_restart_hit(spec.factory, spec.restart_period, spec.budget, target, seed);
        break;
      case Mode::kRp: {
        RestartProcedure rp(spec.factory, spec.rp, seed);
        rp.run(StopRule{spec.budget, target});
        out.hit_times[j] = rp.target_hit();
        out.traces[j] = rp.trace();
        break;
      }
    }
  });

  out.p_hat = failure_curve_from_hits(out.hit_times, spec.budget);
  out.ci_low.resize(spec.budget);
  out.ci_high.resize(spec.budget);
  for (std::uint64_t t = 1; t <= spec.budget; ++t) {
    const Interval ci = binomial_interval(out.p_hat.at(t), spec.m);
    out.ci_low[t - 1] = ci.low;
    out.ci_high[t - 1] = ci.high;
  }
  return out;
}

std::vector<ComparisonRow> compare(std::span<const CurveEstimate> estimates) {
  std::vector<ComparisonRow> rows;
  rows.reserve(estimates.size());
  for (const auto& e : estimates) {
    rows.push_back(ComparisonRow{e.instance, e.mode, e.budget, e.at_budget(), e.ci_low[e.budget - 1],
                                 e.ci_high[e.budget - 1], e.m});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    return std::tie(a.instance, a.mode) < std::tie(b.instance, b.mode);
  });
  return rows;
}

std::vector<std::uint64_t> log_spaced_points(std::uint64_t budget, std::size_t per_decade) {
  std::vector<std::uint64_t> pts;
  if (budget == 0) return pts;
  per_decade = std::max<std::size_t>(1, per_decade);
  for (std::size_t i = 0;; ++i) {
    const double v = std::pow(10.0, static_cast<double>(i) / static_cast<double>(per_decade));
    const auto t = static_cast<std::uint64_t>(std::llround(v));
    if (t >= budget) break;
    if (pts.empty() || t > pts.back()) pts.push_back(t);
  }
  pts.push_back(budget);
  return pts;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_curve_csv(std::ostream& os, std::span<const CurveEstimate> estimates) {
  os << "instance,mode,t,pHat,ciLow,ciHigh\n";
  for (const auto& e : estimates) {
    for (const auto t : log_spaced_points(e.budget)) {
      os << e.instance << ',' << e.mode << ',' << t << ',' << format_number(e.p_hat.at(t)) << ','
         << format_number(e.ci_low[t - 1]) << ',' << format_number(e.ci_high[t - 1]) << '\n';
    }
  }
}

void write_table_csv(std::ostream& os, std::span<const ComparisonRow> rows) {
  os << "instance,mode,Tc,fp,ciLow,ciHigh,m\n";
  for (const auto& r : rows) {
    os << r.instance << ',' << r.mode << ',' << r.t_c << ',' << format_number(r.fp) << ','
       << format_number(r.ci_low) << ',' << format_number(r.ci_high) << ',' << r.m << '\n';
  }
}

void write_trace_csv(std::ostream& os, std::span<const CurveEstimate> estimates) {
  os << "instance,run,k,r,T,yTilde,sigmaHat,lambda,pseudoTime\n";
  for (const auto& e : estimates) {
    for (std::size_t run = 0; run < e.traces.size(); ++run) {
      for (const auto& it : e.traces[run]) {
        os << e.instance << ',' << run + 1 << ',' << it.k << ',' << it.r << ',' << it.T << ','
           << format_number(it.y_tilde.value) << ',' << it.sigma_hat << ',' << format_number(it.lambda)
           << ',' << it.pseudo_time << '\n';
      }
    }
  }
}

}  // namespace arp
