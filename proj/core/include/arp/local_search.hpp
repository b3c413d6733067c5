#pragma once

// Tour improvement for symmetric TSP instances: 2-opt, 2.5-opt (2-opt plus
// single-node insertion) and 3-opt (adds segment exchange). All searches
// use first-improvement over nearest-neighbor candidate lists with
// don't-look bits, followed by full sweeps until no candidate move improves.
// The three procedures cascade: 2.5-opt starts from the 2-opt optimum and
// 3-opt from the 2.5-opt optimum, so their results never get worse in that
// order from the same start.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "arp/tsplib.hpp"

namespace arp {

/// For each city, the `width` nearest other cities in increasing distance
/// (ties by index).
class NeighborLists {
 public:
  NeighborLists(const TspInstance& instance, std::size_t width);

  std::size_t width() const noexcept { return width_; }
  std::span<const int> of(std::size_t city) const noexcept {
    return {lists_.data() + city * width_, width_};
  }

 private:
  std::size_t width_;
  std::vector<int> lists_;
};

struct Tour {
  std::vector<int> order;
  std::int64_t length = 0;
};

/// Wraps an order with its computed length; ContractViolation if `order` is
/// not a permutation.
Tour make_tour(const TspInstance& instance, std::vector<int> order);

enum class LocalSearch { kNone, kTwoOpt, kTwoHalfOpt, kThreeOpt };

std::string_view local_search_name(LocalSearch ls) noexcept;
/// Accepts "none", "2opt", "2.5opt", "3opt". ConfigError otherwise.
LocalSearch parse_local_search(std::string_view name);

Tour two_opt(Tour tour, const TspInstance& instance, const NeighborLists& neighbors);
Tour two_half_opt(Tour tour, const TspInstance& instance, const NeighborLists& neighbors);
Tour three_opt(Tour tour, const TspInstance& instance, const NeighborLists& neighbors);

Tour apply_local_search(LocalSearch kind, Tour tour, const TspInstance& instance,
                        const NeighborLists& neighbors);

}  // namespace arp
