#include "arp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arp/errors.hpp"

namespace arp {

FailureCurve::FailureCurve(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("failure curve value at t=" + std::to_string(i + 1) +
                        " is outside [0, 1]");
    }
  }
}

double FailureCurve::at(std::size_t t) const {
  if (t < 1 || t > values_.size()) {
    throw DomainError("failure curve index " + std::to_string(t) + " outside [1, " +
                      std::to_string(values_.size()) + "]");
  }
  return values_[t - 1];
}

bool FailureCurve::is_nonincreasing() const noexcept {
  return std::adjacent_find(values_.begin(), values_.end(), std::less<>{}) == values_.end();
}

namespace {

void check_period(const FailureCurve& p, std::size_t period) {
  if (period < 1 || period > p.length()) {
    throw DomainError("restart period " + std::to_string(period) + " outside [1, " +
                      std::to_string(p.length()) + "]");
  }
}

}  // namespace

double restart_tail_probability(const FailureCurve& p, std::size_t period, std::uint64_t k) {
  check_period(p, period);
  if (k < 1) throw DomainError("restart_tail_probability: k must be >= 1");
  const std::uint64_t full = (k - 1) / period;
  const std::uint64_t residual = k - full * period;  // in [1, period]
  return std::pow(p.at(period), static_cast<double>(full)) * p.at(residual);
}

double g_value(double failure, std::size_t t) {
  if (failure <= 0.0 || failure >= 1.0) return kInfinity;
  // 1 - x^(1/t) without cancellation for x close to 1 or large t.
  const double gap = -std::expm1(std::log(failure) / static_cast<double>(t));
  return 1.0 / (gap * failure);
}

double expected_time_bound(const FailureCurve& p, std::size_t period) {
  check_period(p, period);
  return g_value(p.at(period), period);
}

SeriesSum expected_optimization_time(const FailureCurve& p, std::size_t period,
                                     std::uint64_t horizon) {
  check_period(p, period);
  const double base = p.at(period);
  if (base >= 1.0) {
    throw DomainError("expected_optimization_time: p(T) = 1, the series diverges");
  }

  // Tail beyond horizon = n*T is at most T * base^n / (1 - base).
  auto tail_after = [&](std::uint64_t n) {
    return static_cast<double>(period) * std::pow(base, static_cast<double>(n)) / (1.0 - base);
  };

  if (horizon == 0) {
    std::uint64_t n = 1;
    if (base > 0.0) {
      while (tail_after(n) >= 1e-12) ++n;
    }
    horizon = n * period;
  }

  SeriesSum out;
  out.horizon = horizon;
  // Sum period by period: block j covers k = jT+1 .. (j+1)T and contributes
  // base^j * p(residual).
  double prefix_within = 0.0;
  for (std::size_t s = 1; s <= period; ++s) prefix_within += p.at(s);
  const std::uint64_t full_blocks = horizon / period;
  const std::uint64_t rest = horizon % period;
  double weight = 1.0;
  for (std::uint64_t j = 0; j < full_blocks; ++j) {
    out.value += weight * prefix_within;
    weight *= base;
  }
  for (std::uint64_t s = 1; s <= rest; ++s) out.value += weight * p.at(s);

  // Every omitted term is at most base^floor((k-1)/T), and those begin at
  // block `full_blocks`.
  out.tail_bound = tail_after(full_blocks);
  return out;
}

OptimalRestart optimal_restart_time(const FailureCurve& p) {
  OptimalRestart best;
  for (std::size_t t = 1; t <= p.length(); ++t) {
    const double g = g_value(p.at(t), t);
    if (g < best.g_min) {
      best.g_min = g;
      best.t_m = t;
    }
  }
  if (best.t_m == 0) throw DomainError("optimal_restart_time: g is infinite for every t");
  return best;
}

FailureCurve synthetic_basin_curve(double beta, double q, std::size_t t_max, std::size_t delay) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("synthetic_basin_curve: beta must be in (0, 1)");
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("synthetic_basin_curve: q must be in (0, 1]");
  std::vector<double> v(t_max);
  double survive = 1.0;
  for (std::size_t t = 1; t <= t_max; ++t) {
    if (t <= delay) {
      v[t - 1] = 1.0;
      continue;
    }
    survive *= (1.0 - q);
    v[t - 1] = beta + (1.0 - beta) * survive;
  }
  return FailureCurve(std::move(v));
}

}  // namespace arp
