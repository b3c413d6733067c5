#include "arp/algorithm.hpp"

#include <algorithm>
#include <string>

#include "arp/errors.hpp"
#include "arp/random.hpp"

namespace arp {

void Trajectory::append(ObjectiveValue v) {
  const ObjectiveValue best = best_.empty() ? v : std::min(best_.back(), v);
  raw_.push_back(v);
  best_.push_back(best);
}

void Trajectory::reserve(std::size_t n) {
  raw_.reserve(n);
  best_.reserve(n);
}

void extend(Trajectory& traj, ResumableAlgorithm& algo, std::size_t to_step) {
  if (to_step < traj.length()) {
    throw ContractViolation("extend: target step " + std::to_string(to_step) +
                            " is shorter than trajectory length " + std::to_string(traj.length()));
  }
  traj.reserve(to_step);
  while (traj.length() < to_step) traj.append(algo.step());
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, index);
}

Replication spawn_replication(const AlgorithmFactory& factory, std::uint64_t master_seed,
                              std::size_t index) {
  if (index < 1) throw ContractViolation("spawn_replication: index must be >= 1");
  const std::uint64_t seed = replication_seed(master_seed, index);
  return Replication{Trajectory(seed), factory(seed)};
}

std::size_t ReplicationPool::common_length() const noexcept {
  if (reps_.empty()) return 0;
  std::size_t len = reps_.front().trajectory.length();
  for (const auto& r : reps_) len = std::min(len, r.trajectory.length());
  return len;
}

bool ReplicationPool::is_rectangular() const noexcept {
  return std::all_of(reps_.begin(), reps_.end(), [&](const Replication& r) {
    return r.trajectory.length() == reps_.front().trajectory.length();
  });
}

ObjectiveValue ReplicationPool::minimum() const noexcept {
  ObjectiveValue m;
  for (const auto& r : reps_) m = std::min(m, r.trajectory.final_best());
  return m;
}

}  // namespace arp
