#pragma once

// TSPLIB instances (NODE_COORD_SECTION with EUC_2D, ATT or CEIL_2D weights)
// and the known-optimum registry. City indices are 0-based in this API;
// the file format's 1-based ids are translated on input and output.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arp {

enum class Metric { kEuc2D, kAtt, kCeil2D };

std::string_view metric_name(Metric m) noexcept;

struct Point {
  double x = 0;
  double y = 0;
};

/// Integer TSPLIB distance between two points under `metric`.
std::int64_t metric_distance(Metric metric, Point a, Point b) noexcept;

class TspInstance {
 public:
  TspInstance(std::string name, Metric metric, std::vector<Point> coords);

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return coords_.size(); }
  Metric metric() const noexcept { return metric_; }
  std::span<const Point> coords() const noexcept { return coords_; }

  std::optional<std::int64_t> known_optimum() const noexcept { return known_optimum_; }
  void set_known_optimum(std::optional<std::int64_t> v) noexcept { known_optimum_ = v; }

  /// Checked distance; DomainError if either index is out of range.
  std::int64_t distance(std::size_t i, std::size_t j) const;
  /// Unchecked lookup for inner loops.
  std::int32_t edge(std::size_t i, std::size_t j) const noexcept { return matrix_[i * coords_.size() + j]; }

 private:
  std::string name_;
  Metric metric_;
  std::vector<Point> coords_;
  std::vector<std::int32_t> matrix_;
  std::optional<std::int64_t> known_optimum_;
};

/// Throws ParseError (kind and line number set) on malformed input.
TspInstance parse_tsplib(std::string_view text);
TspInstance load_tsplib(const std::filesystem::path& path);

/// Writes NAME, TYPE, DIMENSION, EDGE_WEIGHT_TYPE and the coordinates.
std::string to_tsplib(const TspInstance& instance);

/// Sum of consecutive distances plus the closing edge. ContractViolation if
/// `tour` is not a permutation of 0..n-1.
std::int64_t tour_length(const TspInstance& instance, std::span<const int> tour);

bool is_permutation_of_cities(std::span<const int> tour, std::size_t n);

/// instance name -> optimal tour length. Lines are "<name> <integer>";
/// '#' starts a comment.
using OptimumRegistry = std::map<std::string, std::int64_t, std::less<>>;

OptimumRegistry parse_registry(std::string_view text);
OptimumRegistry load_registry(const std::filesystem::path& path);

}  // namespace arp
