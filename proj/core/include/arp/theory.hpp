#pragma once

// Closed-form analysis of fixed-period restarts. A failure curve p holds
// p(1), ..., p(n): the probability that a single run has not found the
// optimum within t iterations.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace arp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Discrete failure probabilities indexed from t = 1.
class FailureCurve {
 public:
  FailureCurve() = default;
  /// Takes p(1), p(2), ... in order. Throws DomainError for values outside
  /// [0, 1]. Monotonicity is not enforced; see is_nonincreasing().
  explicit FailureCurve(std::vector<double> values);

  std::size_t length() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  /// p(t) for 1 <= t <= length().
  double at(std::size_t t) const;
  std::span<const double> values() const noexcept { return values_; }
  bool is_nonincreasing() const noexcept;

 private:
  std::vector<double> values_;
};

/// P(T_R > k) for restarts every `period` steps:
///   p(T)^floor((k-1)/T) * p(k - floor((k-1)/T) * T).
double restart_tail_probability(const FailureCurve& p, std::size_t period, std::uint64_t k);

/// g(x) = 1 / ((1 - x^(1/t)) * x) evaluated at x = p(t). +inf when x is 0 or 1.
double g_value(double failure, std::size_t t);

/// g(period) for curve p: the upper bound on expected optimization time.
double expected_time_bound(const FailureCurve& p, std::size_t period);

struct SeriesSum {
  double value = 0;         // sum_{k=1}^{horizon} P(T_R > k)
  double tail_bound = 0;    // upper bound on the omitted terms k > horizon
  std::uint64_t horizon = 0;
};

/// Truncated series sum_{k>=1} P(T_R > k). With horizon == 0 the horizon is
/// the first multiple of `period` whose geometric tail bound is below 1e-12.
/// Throws DomainError when p(period) == 1 (the series diverges).
SeriesSum expected_optimization_time(const FailureCurve& p, std::size_t period,
                                     std::uint64_t horizon = 0);

struct OptimalRestart {
  std::size_t t_m = 0;
  double g_min = kInfinity;
};

/// Exhaustive scan of g over t = 1..length; returns the first minimizer.
/// Throws DomainError when g is infinite everywhere.
OptimalRestart optimal_restart_time(const FailureCurve& p);

/// p(t) = beta + (1 - beta) * (1 - q)^(t - delay) for t > delay and 1 before,
/// for t = 1..t_max. With delay 0 the optimal restart time is 1; a positive
/// delay moves it inside the domain.
FailureCurve synthetic_basin_curve(double beta, double q, std::size_t t_max, std::size_t delay = 0);

}  // namespace arp
