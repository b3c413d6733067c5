#pragma once

// Resumable stochastic algorithms and the trajectory data model the restart
// procedure operates on. Steps are 1-based throughout: step t = 1 is the first
// iteration of a replication.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "arp/objective.hpp"

namespace arp {

/// One independent run of a stochastic optimizer that can be suspended
/// between iterations and resumed later. Implementations are fully
/// determined by the seed they were constructed with.
class ResumableAlgorithm {
 public:
  virtual ~ResumableAlgorithm() = default;

  /// Runs exactly one iteration and returns the objective of the solution it
  /// produced (not the best so far).
  virtual ObjectiveValue step() = 0;

  /// Number of completed iterations.
  virtual std::size_t steps() const noexcept = 0;
};

/// Creates a fresh algorithm instance for a seed. Must be callable
/// concurrently from several threads.
using AlgorithmFactory = std::function<std::unique_ptr<ResumableAlgorithm>(std::uint64_t seed)>;

/// Per-step record of one replication: the raw objective series and its
/// running minimum. Append-only.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t length() const noexcept { return raw_.size(); }
  bool empty() const noexcept { return raw_.empty(); }

  /// Objective produced at step t (1-based).
  ObjectiveValue raw(std::size_t t) const { return raw_.at(t - 1); }
  /// Best objective over steps 1..t (1-based).
  ObjectiveValue best(std::size_t t) const { return best_.at(t - 1); }
  /// Best over the whole trajectory; +inf when empty.
  ObjectiveValue final_best() const noexcept { return best_.empty() ? ObjectiveValue{} : best_.back(); }

  std::span<const ObjectiveValue> raw_series() const noexcept { return raw_; }
  std::span<const ObjectiveValue> best_series() const noexcept { return best_; }

  void append(ObjectiveValue v);
  void reserve(std::size_t n);

 private:
  std::uint64_t seed_ = 0;
  std::vector<ObjectiveValue> raw_;
  std::vector<ObjectiveValue> best_;
};

/// Runs `algo` until `traj` has `to_step` entries. Throws ContractViolation
/// if `to_step` is shorter than the trajectory already is.
void extend(Trajectory& traj, ResumableAlgorithm& algo, std::size_t to_step);

/// A live replication: the algorithm state plus everything it produced.
struct Replication {
  Trajectory trajectory;
  std::unique_ptr<ResumableAlgorithm> algorithm;
};

/// Seed used for replication `index` (1-based) of a run with `master_seed`.
std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t index);

/// Creates replication `index` (1-based). Same inputs, same trajectory.
Replication spawn_replication(const AlgorithmFactory& factory, std::uint64_t master_seed,
                              std::size_t index);

/// Ordered replications 1..r. After every completed restart-procedure
/// iteration the pool is rectangular: all trajectories share one length.
class ReplicationPool {
 public:
  std::size_t size() const noexcept { return reps_.size(); }
  bool empty() const noexcept { return reps_.empty(); }

  /// 0-based access; replication number i lives at index i - 1.
  Replication& operator[](std::size_t idx) { return reps_.at(idx); }
  const Replication& operator[](std::size_t idx) const { return reps_.at(idx); }

  void push_back(Replication rep) { reps_.push_back(std::move(rep)); }

  /// Smallest trajectory length; 0 for an empty pool.
  std::size_t common_length() const noexcept;
  bool is_rectangular() const noexcept;

  /// Minimum objective over every stored entry (the pool's Y-tilde).
  ObjectiveValue minimum() const noexcept;

  auto begin() const noexcept { return reps_.begin(); }
  auto end() const noexcept { return reps_.end(); }

 private:
  std::vector<Replication> reps_;
};

}  // namespace arp
