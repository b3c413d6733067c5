#pragma once

// MAX-MIN Ant System as a resumable algorithm, for symmetric TSP tours and
// for the pseudo-Boolean problem f(x) = -|sum(x) - (N-1)/2|.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "arp/algorithm.hpp"
#include "arp/local_search.hpp"
#include "arp/random.hpp"
#include "arp/tsplib.hpp"

namespace arp {

struct MmasConfig {
  std::size_t ants = 25;
  double alpha = 1.0;  // trail exponent
  double beta = 2.0;   // heuristic exponent (TSP only)
  double rho = 0.02;   // evaporation rate
  std::size_t candidates = 20;
  LocalSearch local_search = LocalSearch::kNone;
  // Every n-th iteration deposits on the best-so-far solution instead of the
  // iteration best; 0 disables.
  std::size_t best_so_far_period = 10;

  /// Defaults for bitstrings: 10 ants and rho = 0.3, otherwise as above.
  static MmasConfig bitstring_defaults();
  /// ConfigError on ants or candidates < 1, rho outside (0, 1), negative exponents.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Pheromone models

/// Symmetric city-pair trails clamped to [tau_min, tau_max].
class TrailMatrix {
 public:
  TrailMatrix(std::size_t n, double tau_min, double tau_max);

  std::size_t size() const noexcept { return n_; }
  double tau_min() const noexcept { return tau_min_; }
  double tau_max() const noexcept { return tau_max_; }
  double get(std::size_t i, std::size_t j) const noexcept { return tau_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) noexcept;
  void fill(double v) noexcept;
  /// Changes the limits and clamps every trail into them.
  void set_limits(double tau_min, double tau_max);
  bool within_limits() const noexcept;

  std::span<const double> raw() const noexcept { return tau_; }

 private:
  std::size_t n_;
  double tau_min_;
  double tau_max_;
  std::vector<double> tau_;
};

/// Per-bit trails for the values 0 and 1, clamped to [tau_min, tau_max].
class BitTrails {
 public:
  BitTrails(std::size_t n, double tau_min, double tau_max);

  std::size_t size() const noexcept { return zero_.size(); }
  double tau_min() const noexcept { return tau_min_; }
  double tau_max() const noexcept { return tau_max_; }
  double get(std::size_t bit, int value) const noexcept { return value ? one_[bit] : zero_[bit]; }
  void set(std::size_t bit, int value, double v) noexcept;
  bool within_limits() const noexcept;

 private:
  friend void pheromone_update(BitTrails&, std::span<const std::uint8_t>, double, double);
  double tau_min_;
  double tau_max_;
  std::vector<double> zero_;
  std::vector<double> one_;
};

/// Evaporates every trail by (1 - rho), adds `deposit` on the tour's edges
/// and clamps into the limits.
void pheromone_update(TrailMatrix& trails, std::span<const int> tour, double deposit, double rho);

/// Same for bitstrings: `deposit` goes to the chosen value of each bit.
void pheromone_update(BitTrails& trails, std::span<const std::uint8_t> bits, double deposit,
                      double rho);

// ---------------------------------------------------------------------------
// TSP

/// Immutable per-instance data shared by all replications.
class TspProblem {
 public:
  TspProblem(TspInstance instance, const MmasConfig& config);

  const TspInstance& instance() const noexcept { return instance_; }
  const NeighborLists& neighbors() const noexcept { return neighbors_; }
  /// eta^beta with eta = 1/d; zero-length edges use d = 0.5.
  double heuristic(std::size_t i, std::size_t j) const noexcept { return heuristic_[i * n_ + j]; }

 private:
  TspInstance instance_;
  std::size_t n_;
  NeighborLists neighbors_;
  std::vector<double> heuristic_;
};

/// Selection weights tau^alpha * eta^beta for moving from `current` to each
/// unvisited city in the candidate list, or over all unvisited cities when no
/// candidate is left. Returns (city, weight) pairs.
std::vector<std::pair<int, double>> next_city_weights(const TrailMatrix& trails,
                                                      const TspProblem& problem,
                                                      const MmasConfig& config, int current,
                                                      std::span<const std::uint8_t> visited);

/// Builds one ant's tour from a uniformly random start city.
std::vector<int> construct_tour(const TrailMatrix& trails, const TspProblem& problem,
                                const MmasConfig& config, Rng& rng);

/// Length of the greedy nearest-neighbor tour from city 0.
std::int64_t nearest_neighbor_length(const TspInstance& instance);

class TspMmas final : public ResumableAlgorithm {
 public:
  TspMmas(std::shared_ptr<const TspProblem> problem, MmasConfig config, std::uint64_t seed);

  ObjectiveValue step() override;
  std::size_t steps() const noexcept override { return iteration_; }

  const Tour& best_tour() const noexcept { return best_; }
  const TrailMatrix& trails() const noexcept { return trails_; }

 private:
  void reset_limits(std::int64_t best_length);

  std::shared_ptr<const TspProblem> problem_;
  MmasConfig config_;
  Rng rng_;
  TrailMatrix trails_;
  Tour best_;
  std::size_t iteration_ = 0;
};

AlgorithmFactory make_tsp_mmas_factory(std::shared_ptr<const TspProblem> problem, MmasConfig config);

// ---------------------------------------------------------------------------
// Pseudo-Boolean problem

class BitstringProblem {
 public:
  explicit BitstringProblem(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  /// -|ones - (N-1)/2|.
  ObjectiveValue value_for_ones(std::size_t ones) const noexcept;
  ObjectiveValue evaluate(std::span<const std::uint8_t> bits) const;
  /// Global minimum, attained by the all-ones string: -(N+1)/2.
  ObjectiveValue optimum() const noexcept { return value_for_ones(n_); }

 private:
  std::size_t n_;
};

/// Sets bit i to 1 with probability tau(i,1) / (tau(i,0) + tau(i,1)).
std::vector<std::uint8_t> construct_bitstring(const BitTrails& trails, Rng& rng);

class BitstringMmas final : public ResumableAlgorithm {
 public:
  BitstringMmas(BitstringProblem problem, MmasConfig config, std::uint64_t seed);

  ObjectiveValue step() override;
  std::size_t steps() const noexcept override { return iteration_; }

  const BitTrails& trails() const noexcept { return trails_; }
  ObjectiveValue best() const noexcept { return best_value_; }

 private:
  BitstringProblem problem_;
  MmasConfig config_;
  Rng rng_;
  BitTrails trails_;
  std::vector<std::uint8_t> best_;
  ObjectiveValue best_value_;
  std::size_t iteration_ = 0;
};

AlgorithmFactory make_bitstring_mmas_factory(BitstringProblem problem, MmasConfig config);

}  // namespace arp
