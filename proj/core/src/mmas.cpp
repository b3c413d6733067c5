#include "arp/mmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "arp/errors.hpp"

namespace arp {

MmasConfig MmasConfig::bitstring_defaults() {
  MmasConfig c;
  c.ants = 10;
  c.rho = 0.3;
  return c;
}

void MmasConfig::validate() const {
  if (ants < 1) throw ConfigError("mmas ants must be >= 1");
  if (candidates < 1) throw ConfigError("mmas candidates must be >= 1");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("mmas rho must be in (0, 1)");
  if (!(alpha >= 0.0)) throw ConfigError("mmas alpha must be >= 0");
  if (!(beta >= 0.0)) throw ConfigError("mmas beta must be >= 0");
}

// ---------------------------------------------------------------------------

TrailMatrix::TrailMatrix(std::size_t n, double tau_min, double tau_max)
    : n_(n), tau_min_(tau_min), tau_max_(tau_max), tau_(n * n, tau_max) {
  if (!(tau_min > 0.0 && tau_min <= tau_max)) throw DomainError("trail limits need 0 < tau_min <= tau_max");
}

void TrailMatrix::set(std::size_t i, std::size_t j, double v) noexcept {
  v = std::clamp(v, tau_min_, tau_max_);
  tau_[i * n_ + j] = v;
  tau_[j * n_ + i] = v;
}

void TrailMatrix::fill(double v) noexcept { std::fill(tau_.begin(), tau_.end(), std::clamp(v, tau_min_, tau_max_)); }

void TrailMatrix::set_limits(double tau_min, double tau_max) {
  if (!(tau_min > 0.0 && tau_min <= tau_max)) throw DomainError("trail limits need 0 < tau_min <= tau_max");
  tau_min_ = tau_min;
  tau_max_ = tau_max;
  for (auto& t : tau_) t = std::clamp(t, tau_min_, tau_max_);
}

bool TrailMatrix::within_limits() const noexcept {
  return std::all_of(tau_.begin(), tau_.end(), [&](double t) { return t >= tau_min_ && t <= tau_max_; });
}

BitTrails::BitTrails(std::size_t n, double tau_min, double tau_max)
    : tau_min_(tau_min), tau_max_(tau_max), zero_(n, tau_max), one_(n, tau_max) {
  if (!(tau_min > 0.0 && tau_min <= tau_max)) throw DomainError("trail limits need 0 < tau_min <= tau_max");
}

void BitTrails::set(std::size_t bit, int value, double v) noexcept {
  (value ? one_ : zero_)[bit] = std::clamp(v, tau_min_, tau_max_);
}

bool BitTrails::within_limits() const noexcept {
  auto ok = [&](double t) { return t >= tau_min_ && t <= tau_max_; };
  return std::all_of(zero_.begin(), zero_.end(), ok) && std::all_of(one_.begin(), one_.end(), ok);
}

void pheromone_update(TrailMatrix& trails, std::span<const int> tour, double deposit, double rho) {
  const std::size_t n = trails.size();
  const double keep = 1.0 - rho;
  std::vector<double> next(trails.raw().begin(), trails.raw().end());
  for (auto& t : next) t *= keep;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    const std::size_t a = tour[k];
    const std::size_t b = tour[(k + 1) % tour.size()];
    next[a * n + b] += deposit;
    if (a != b) next[b * n + a] += deposit;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) trails.set(i, j, next[i * n + j]);
  }
}

void pheromone_update(BitTrails& trails, std::span<const std::uint8_t> bits, double deposit,
                      double rho) {
  const double keep = 1.0 - rho;
  for (std::size_t i = 0; i < trails.size(); ++i) {
    double z = trails.zero_[i] * keep;
    double o = trails.one_[i] * keep;
    (bits[i] ? o : z) += deposit;
    trails.zero_[i] = std::clamp(z, trails.tau_min_, trails.tau_max_);
    trails.one_[i] = std::clamp(o, trails.tau_min_, trails.tau_max_);
  }
}

// ---------------------------------------------------------------------------

TspProblem::TspProblem(TspInstance instance, const MmasConfig& config)
    : instance_(std::move(instance)),
      n_(instance_.dimension()),
      neighbors_(instance_, config.candidates),
      heuristic_(n_ * n_, 0.0) {
  if (n_ < 3) throw DomainError("TSP instances need at least 3 cities");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j) continue;
      const double d = std::max(0.5, static_cast<double>(instance_.edge(i, j)));
      heuristic_[i * n_ + j] = config.beta == 2.0 ? 1.0 / (d * d) : std::pow(1.0 / d, config.beta);
    }
  }
}

namespace {

double trail_power(double tau, double alpha) {
  return alpha == 1.0 ? tau : std::pow(tau, alpha);
}

// choice[i*n+j] = tau^alpha * eta^beta.
std::vector<double> choice_matrix(const TrailMatrix& trails, const TspProblem& problem,
                                  const MmasConfig& config) {
  const std::size_t n = trails.size();
  std::vector<double> choice(n * n);
  const auto tau = trails.raw();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      choice[i * n + j] = trail_power(tau[i * n + j], config.alpha) * problem.heuristic(i, j);
    }
  }
  return choice;
}

std::vector<int> build_tour(std::span<const double> choice, const TspProblem& problem, Rng& rng) {
  const std::size_t n = problem.instance().dimension();
  std::vector<int> tour;
  tour.reserve(n);
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<std::pair<int, double>> options;
  options.reserve(n);

  int current = static_cast<int>(uniform_index(rng, n));
  tour.push_back(current);
  visited[current] = 1;
  while (tour.size() < n) {
    options.clear();
    double total = 0.0;
    for (int c : problem.neighbors().of(current)) {
      if (visited[c]) continue;
      const double w = choice[current * n + c];
      options.emplace_back(c, w);
      total += w;
    }
    if (options.empty()) {
      for (std::size_t c = 0; c < n; ++c) {
        if (visited[c]) continue;
        const double w = choice[current * n + c];
        options.emplace_back(static_cast<int>(c), w);
        total += w;
      }
    }
    int next = options.back().first;
    const double pick = uniform01(rng) * total;
    double acc = 0.0;
    for (const auto& [c, w] : options) {
      acc += w;
      if (pick < acc) {
        next = c;
        break;
      }
    }
    tour.push_back(next);
    visited[next] = 1;
    current = next;
  }
  return tour;
}

}  // namespace

std::vector<std::pair<int, double>> next_city_weights(const TrailMatrix& trails,
                                                      const TspProblem& problem,
                                                      const MmasConfig& config, int current,
                                                      std::span<const std::uint8_t> visited) {
  std::vector<std::pair<int, double>> out;
  auto weight = [&](int c) {
    return trail_power(trails.get(current, c), config.alpha) * problem.heuristic(current, c);
  };
  for (int c : problem.neighbors().of(current)) {
    if (!visited[c]) out.emplace_back(c, weight(c));
  }
  if (out.empty()) {
    for (std::size_t c = 0; c < visited.size(); ++c) {
      if (!visited[c]) out.emplace_back(static_cast<int>(c), weight(static_cast<int>(c)));
    }
  }
  return out;
}

std::vector<int> construct_tour(const TrailMatrix& trails, const TspProblem& problem,
                                const MmasConfig& config, Rng& rng) {
  const auto choice = choice_matrix(trails, problem, config);
  return build_tour(choice, problem, rng);
}

std::int64_t nearest_neighbor_length(const TspInstance& instance) {
  const std::size_t n = instance.dimension();
  std::vector<std::uint8_t> visited(n, 0);
  std::size_t current = 0;
  visited[0] = 1;
  std::int64_t len = 0;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (!visited[c] && (best == n || instance.edge(current, c) < instance.edge(current, best))) best = c;
    }
    len += instance.edge(current, best);
    visited[best] = 1;
    current = best;
  }
  return len + instance.edge(current, 0);
}

TspMmas::TspMmas(std::shared_ptr<const TspProblem> problem, MmasConfig config, std::uint64_t seed)
    : problem_(std::move(problem)),
      config_(config),
      rng_(seed),
      trails_(problem_->instance().dimension(), 1.0, 1.0) {
  config_.validate();
  reset_limits(nearest_neighbor_length(problem_->instance()));
  trails_.fill(trails_.tau_max());
}

void TspMmas::reset_limits(std::int64_t best_length) {
  const double tau_max = 1.0 / (config_.rho * static_cast<double>(std::max<std::int64_t>(best_length, 1)));
  const double tau_min = tau_max / (2.0 * static_cast<double>(problem_->instance().dimension()));
  trails_.set_limits(tau_min, tau_max);
}

ObjectiveValue TspMmas::step() {
  ++iteration_;
  const auto& inst = problem_->instance();
  const auto choice = choice_matrix(trails_, *problem_, config_);

  Tour iteration_best;
  iteration_best.length = std::numeric_limits<std::int64_t>::max();
  for (std::size_t a = 0; a < config_.ants; ++a) {
    Tour t = make_tour(inst, build_tour(choice, *problem_, rng_));
    t = apply_local_search(config_.local_search, std::move(t), inst, problem_->neighbors());
    if (t.length < iteration_best.length) iteration_best = std::move(t);
  }

  if (best_.order.empty() || iteration_best.length < best_.length) {
    best_ = iteration_best;
    reset_limits(best_.length);
  }

  const bool use_best = config_.best_so_far_period > 0 && iteration_ % config_.best_so_far_period == 0;
  const Tour& depositing = use_best ? best_ : iteration_best;
  pheromone_update(trails_, depositing.order, 1.0 / static_cast<double>(depositing.length), config_.rho);
  return ObjectiveValue(static_cast<double>(iteration_best.length));
}

AlgorithmFactory make_tsp_mmas_factory(std::shared_ptr<const TspProblem> problem, MmasConfig config) {
  config.validate();
  return [problem = std::move(problem), config](std::uint64_t seed) -> std::unique_ptr<ResumableAlgorithm> {
    return std::make_unique<TspMmas>(problem, config, seed);
  };
}

// ---------------------------------------------------------------------------

BitstringProblem::BitstringProblem(std::size_t n) : n_(n) {
  if (n < 1) throw DomainError("bitstring length must be >= 1");
}

ObjectiveValue BitstringProblem::value_for_ones(std::size_t ones) const noexcept {
  return ObjectiveValue(-std::abs(static_cast<double>(ones) - (static_cast<double>(n_) - 1.0) / 2.0));
}

ObjectiveValue BitstringProblem::evaluate(std::span<const std::uint8_t> bits) const {
  if (bits.size() != n_) throw ContractViolation("bitstring has wrong length");
  return value_for_ones(static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1})));
}

std::vector<std::uint8_t> construct_bitstring(const BitTrails& trails, Rng& rng) {
  std::vector<std::uint8_t> bits(trails.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double one = trails.get(i, 1);
    bits[i] = uniform01(rng) * (trails.get(i, 0) + one) < one ? 1 : 0;
  }
  return bits;
}

BitstringMmas::BitstringMmas(BitstringProblem problem, MmasConfig config, std::uint64_t seed)
    : problem_(problem),
      config_(config),
      rng_(seed),
      trails_(problem.size(), 1.0 / static_cast<double>(problem.size()),
              problem.size() > 1 ? 1.0 - 1.0 / static_cast<double>(problem.size()) : 1.0) {
  config_.validate();
}

ObjectiveValue BitstringMmas::step() {
  ++iteration_;
  std::vector<std::uint8_t> iteration_best;
  ObjectiveValue iteration_value;
  for (std::size_t a = 0; a < config_.ants; ++a) {
    auto bits = construct_bitstring(trails_, rng_);
    const ObjectiveValue v = problem_.evaluate(bits);
    if (v < iteration_value) {
      iteration_value = v;
      iteration_best = std::move(bits);
    }
  }
  if (iteration_value < best_value_) {
    best_value_ = iteration_value;
    best_ = iteration_best;
  }
  const bool use_best = config_.best_so_far_period > 0 && iteration_ % config_.best_so_far_period == 0;
  // Fitness is negative here, so the deposit is a constant rather than 1/f.
  pheromone_update(trails_, use_best ? best_ : iteration_best, config_.rho, config_.rho);
  return iteration_value;
}

AlgorithmFactory make_bitstring_mmas_factory(BitstringProblem problem, MmasConfig config) {
  config.validate();
  return [problem, config](std::uint64_t seed) -> std::unique_ptr<ResumableAlgorithm> {
    return std::make_unique<BitstringMmas>(problem, config, seed);
  };
}

}  // namespace arp
