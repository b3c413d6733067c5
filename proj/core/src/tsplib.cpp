#include "arp/tsplib.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "arp/errors.hpp"

namespace arp {

std::string_view metric_name(Metric m) noexcept {
  switch (m) {
    case Metric::kEuc2D: return "EUC_2D";
    case Metric::kAtt: return "ATT";
    case Metric::kCeil2D: return "CEIL_2D";
  }
  return "?";
}

std::int64_t metric_distance(Metric metric, Point a, Point b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  switch (metric) {
    case Metric::kEuc2D:
      return static_cast<std::int64_t>(std::sqrt(dx * dx + dy * dy) + 0.5);
    case Metric::kCeil2D:
      return static_cast<std::int64_t>(std::ceil(std::sqrt(dx * dx + dy * dy)));
    case Metric::kAtt: {
      const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
      const auto t = static_cast<std::int64_t>(r + 0.5);
      return static_cast<double>(t) < r ? t + 1 : t;
    }
  }
  return 0;
}

TspInstance::TspInstance(std::string name, Metric metric, std::vector<Point> coords)
    : name_(std::move(name)), metric_(metric), coords_(std::move(coords)) {
  const std::size_t n = coords_.size();
  matrix_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t d = metric_distance(metric_, coords_[i], coords_[j]);
      if (d > std::numeric_limits<std::int32_t>::max()) {
        throw DomainError("edge weight overflows 32 bits in instance " + name_);
      }
      matrix_[i * n + j] = matrix_[j * n + i] = static_cast<std::int32_t>(d);
    }
  }
}

std::int64_t TspInstance::distance(std::size_t i, std::size_t j) const {
  const std::size_t n = coords_.size();
  if (i >= n || j >= n) {
    throw DomainError("city index out of range for " + std::to_string(n) + " cities");
  }
  return edge(i, j);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

// Coordinates may be written as e.g. "6.7e+02", which from_chars handles.
bool parse_coordinate(std::string_view s, double& out) { return parse_number(s, out); }

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TspInstance parse_tsplib(std::string_view text) {
  using K = ParseError::Kind;
  const auto lines = lines_of(text);

  std::string name = "unnamed";
  std::optional<std::size_t> dimension;
  std::optional<Metric> metric;
  std::size_t section_line = 0;
  std::vector<Point> coords;
  std::vector<bool> seen;

  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line == "EOF") break;
    if (line.starts_with("NODE_COORD_SECTION")) {
      section_line = lineno;
      break;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      // Other *_SECTION blocks are outside the supported subset.
      if (line.ends_with("_SECTION")) {
        throw ParseError(K::kMalformed, lineno, "unsupported section " + std::string(line));
      }
      throw ParseError(K::kMalformed, lineno, "expected 'KEY : VALUE', got '" + std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, colon));
    const auto value = trim(line.substr(colon + 1));
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "DIMENSION") {
      std::size_t n = 0;
      if (!parse_number(value, n) || n == 0) {
        throw ParseError(K::kMalformed, lineno, "DIMENSION must be a positive integer");
      }
      dimension = n;
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value == "EUC_2D") {
        metric = Metric::kEuc2D;
      } else if (value == "ATT") {
        metric = Metric::kAtt;
      } else if (value == "CEIL_2D") {
        metric = Metric::kCeil2D;
      } else {
        throw ParseError(K::kUnsupportedMetric, lineno,
                         "unsupported EDGE_WEIGHT_TYPE " + std::string(value));
      }
    } else if (key == "TYPE") {
      if (value != "TSP") {
        throw ParseError(K::kMalformed, lineno, "unsupported TYPE " + std::string(value));
      }
    }
    // Unknown keys (COMMENT, DISPLAY_DATA_TYPE, ...) are ignored.
  }

  if (section_line == 0) {
    throw ParseError(K::kMalformed, lines.size(), "missing NODE_COORD_SECTION");
  }
  if (!dimension) {
    throw ParseError(K::kMissingDimension, section_line, "DIMENSION not given before NODE_COORD_SECTION");
  }
  if (!metric) {
    throw ParseError(K::kMalformed, section_line, "EDGE_WEIGHT_TYPE not given before NODE_COORD_SECTION");
  }

  coords.resize(*dimension);
  seen.assign(*dimension, false);
  std::size_t rows = 0;
  std::size_t last_line = section_line;
  for (++i; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line == "EOF") break;
    const auto fields = split_ws(line);
    std::size_t id = 0;
    if (!parse_number(fields.front(), id)) break;  // next keyword ends the section
    last_line = lineno;
    Point p;
    if (fields.size() != 3 || !parse_coordinate(fields[1], p.x) || !parse_coordinate(fields[2], p.y)) {
      throw ParseError(K::kMalformed, lineno, "expected '<id> <x> <y>'");
    }
    ++rows;
    if (rows > *dimension) {
      throw ParseError(K::kCoordinateCountMismatch, lineno,
                       "more coordinate rows than DIMENSION " + std::to_string(*dimension));
    }
    if (id < 1 || id > *dimension || seen[id - 1]) {
      throw ParseError(K::kMalformed, lineno, "node id " + std::to_string(id) + " out of range or repeated");
    }
    seen[id - 1] = true;
    coords[id - 1] = p;
  }
  if (rows != *dimension) {
    throw ParseError(K::kCoordinateCountMismatch, last_line,
                     "DIMENSION is " + std::to_string(*dimension) + " but " + std::to_string(rows) +
                         " coordinate rows were given");
  }
  return TspInstance(std::move(name), *metric, std::move(coords));
}

TspInstance load_tsplib(const std::filesystem::path& path) { return parse_tsplib(read_file(path)); }

std::string to_tsplib(const TspInstance& instance) {
  std::ostringstream os;
  os.precision(17);
  os << "NAME : " << instance.name() << '\n'
     << "TYPE : TSP\n"
     << "DIMENSION : " << instance.dimension() << '\n'
     << "EDGE_WEIGHT_TYPE : " << metric_name(instance.metric()) << '\n'
     << "NODE_COORD_SECTION\n";
  const auto c = instance.coords();
  for (std::size_t k = 0; k < c.size(); ++k) os << k + 1 << ' ' << c[k].x << ' ' << c[k].y << '\n';
  os << "EOF\n";
  return os.str();
}

bool is_permutation_of_cities(std::span<const int> tour, std::size_t n) {
  if (tour.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int c : tour) {
    if (c < 0 || static_cast<std::size_t>(c) >= n || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

std::int64_t tour_length(const TspInstance& instance, std::span<const int> tour) {
  if (!is_permutation_of_cities(tour, instance.dimension())) {
    throw ContractViolation("tour is not a permutation of the instance's cities");
  }
  std::int64_t len = 0;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    len += instance.edge(tour[k], tour[(k + 1) % tour.size()]);
  }
  return len;
}

OptimumRegistry parse_registry(std::string_view text) {
  OptimumRegistry reg;
  const auto lines = lines_of(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    auto line = lines[k];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    std::int64_t value = 0;
    if (fields.size() != 2 || !parse_number(fields[1], value)) {
      throw ParseError(ParseError::Kind::kMalformed, k + 1, "expected '<name> <integer optimum>'");
    }
    reg[std::string(fields[0])] = value;
  }
  return reg;
}

OptimumRegistry load_registry(const std::filesystem::path& path) { return parse_registry(read_file(path)); }

}  // namespace arp
