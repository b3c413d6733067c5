#include "arp/local_search.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "arp/errors.hpp"

namespace arp {

NeighborLists::NeighborLists(const TspInstance& instance, std::size_t width) {
  const std::size_t n = instance.dimension();
  width_ = std::min(width, n > 0 ? n - 1 : 0);
  lists_.resize(n * width_);
  std::vector<int> others(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::iota(others.begin(), others.end(), 0);
    std::swap(others[c], others.back());
    others.pop_back();
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(width_), others.end(),
                      [&](int a, int b) {
                        const auto da = instance.edge(c, a);
                        const auto db = instance.edge(c, b);
                        return da != db ? da < db : a < b;
                      });
    std::copy_n(others.begin(), width_, lists_.begin() + static_cast<std::ptrdiff_t>(c * width_));
    others.resize(n);
  }
}

Tour make_tour(const TspInstance& instance, std::vector<int> order) {
  const auto len = tour_length(instance, order);
  return Tour{std::move(order), len};
}

std::string_view local_search_name(LocalSearch ls) noexcept {
  switch (ls) {
    case LocalSearch::kNone: return "none";
    case LocalSearch::kTwoOpt: return "2opt";
    case LocalSearch::kTwoHalfOpt: return "2.5opt";
    case LocalSearch::kThreeOpt: return "3opt";
  }
  return "?";
}

LocalSearch parse_local_search(std::string_view name) {
  for (auto ls : {LocalSearch::kNone, LocalSearch::kTwoOpt, LocalSearch::kTwoHalfOpt, LocalSearch::kThreeOpt}) {
    if (name == local_search_name(ls)) return ls;
  }
  throw ConfigError("unknown local search '" + std::string(name) + "' (expected none, 2opt, 2.5opt, 3opt)");
}

namespace {

// Array tour with inverse positions.
class Workspace {
 public:
  Workspace(Tour tour, const TspInstance& instance)
      : inst_(instance), order_(std::move(tour.order)), pos_(order_.size()), length_(tour.length) {
    if (!is_permutation_of_cities(order_, inst_.dimension())) {
      throw ContractViolation("local search input is not a permutation of the instance's cities");
    }
    reindex(0, order_.size());
  }

  std::size_t n() const noexcept { return order_.size(); }
  int d(int a, int b) const noexcept { return inst_.edge(a, b); }
  int succ(int c) const noexcept { return order_[(pos_[c] + 1) % n()]; }
  int pred(int c) const noexcept { return order_[(pos_[c] + n() - 1) % n()]; }
  // Position of c counted forward from `origin`.
  std::size_t rel(int origin, int c) const noexcept { return (pos_[c] + n() - pos_[origin]) % n(); }

  // Reverses the path from city `first` forward to city `last`; reverses the
  // complementary path instead when that is shorter (same cyclic tour).
  void reverse_path(int first, int last) {
    std::size_t i = pos_[first];
    std::size_t j = pos_[last];
    std::size_t len = (j + n() - i) % n() + 1;
    if (2 * len > n()) {
      const std::size_t ni = (j + 1) % n();
      const std::size_t nj = (i + n() - 1) % n();
      i = ni;
      j = nj;
      len = n() - len;
    }
    for (std::size_t k = 0; k < len / 2; ++k) {
      std::swap(order_[i], order_[j]);
      pos_[order_[i]] = i;
      pos_[order_[j]] = j;
      i = (i + 1) % n();
      j = (j + n() - 1) % n();
    }
  }

  // Moves city a so that it directly follows city x.
  void insert_after(int a, int x) {
    const std::size_t pa = pos_[a];
    const std::size_t px = pos_[x];
    auto base = order_.begin();
    if (pa < px) {
      std::rotate(base + pa, base + pa + 1, base + px + 1);
      reindex(pa, px + 1);
    } else {
      std::rotate(base + px + 1, base + pa, base + pa + 1);
      reindex(px + 1, pa + 1);
    }
  }

  // Tour a [b..dd] [c..e] f...  becomes  a [c..e] [b..dd] f...
  void exchange_segments(int a, int c, int e) {
    const auto base = order_.begin();
    std::rotate(base, base + pos_[a], order_.end());
    reindex(0, n());
    std::rotate(base + 1, base + pos_[c], base + pos_[e] + 1);
    reindex(0, n());
  }

  void add_length(std::int64_t delta) noexcept { length_ += delta; }

  Tour finish() && { return Tour{std::move(order_), length_}; }

 private:
  void reindex(std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) pos_[order_[k]] = k;
  }

  const TspInstance& inst_;
  std::vector<int> order_;
  std::vector<std::size_t> pos_;
  std::int64_t length_;
};

// Repeats don't-look-bit driven passes until a sweep with every city active
// finds nothing. try_city(a, touched) applies one improving move from a, or
// returns false. Returns whether any move was applied.
template <typename TryCity>
bool converge(Workspace& ws, TryCity&& try_city) {
  const std::size_t n = ws.n();
  std::deque<int> queue;
  std::vector<char> queued(n, 0);
  std::vector<int> touched;
  bool any = false;
  for (;;) {
    for (std::size_t c = 0; c < n; ++c) {
      queue.push_back(static_cast<int>(c));
      queued[c] = 1;
    }
    bool improved = false;
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      queued[a] = 0;
      touched.clear();
      if (!try_city(a, touched)) continue;
      improved = true;
      for (int c : touched) {
        if (!queued[c]) {
          queued[c] = 1;
          queue.push_back(c);
        }
      }
    }
    if (!improved) return any;
    any = true;
  }
}

bool two_opt_pass(Workspace& ws, const NeighborLists& nl) {
  return converge(ws, [&](int a, std::vector<int>& touched) {
    for (const bool forward : {true, false}) {
      const int a2 = forward ? ws.succ(a) : ws.pred(a);
      const int d12 = ws.d(a, a2);
      for (const int c : nl.of(a)) {
        const int dac = ws.d(a, c);
        if (dac >= d12) break;
        const int c2 = forward ? ws.succ(c) : ws.pred(c);
        if (c2 == a || c == a2) continue;
        const int delta = dac + ws.d(a2, c2) - d12 - ws.d(c, c2);
        if (delta < 0) {
          // New edges (a, c) and (a2, c2).
          if (forward) {
            ws.reverse_path(a2, c);
          } else {
            ws.reverse_path(a, c2);
          }
          ws.add_length(delta);
          touched = {a, a2, c, c2};
          return true;
        }
      }
    }
    return false;
  });
}

bool insertion_pass(Workspace& ws, const NeighborLists& nl) {
  if (ws.n() < 4) return false;
  return converge(ws, [&](int a, std::vector<int>& touched) {
    const int p = ws.pred(a);
    const int s = ws.succ(a);
    const int removal_gain = ws.d(p, a) + ws.d(a, s) - ws.d(p, s);
    for (const int c : nl.of(a)) {
      for (const bool after_c : {true, false}) {
        const int x = after_c ? c : ws.pred(c);  // insert between x and succ(x)
        const int y = ws.succ(x);
        if (x == a || y == a) continue;
        const int delta = ws.d(x, a) + ws.d(a, y) - ws.d(x, y) - removal_gain;
        if (delta < 0) {
          ws.insert_after(a, x);
          ws.add_length(delta);
          touched = {a, p, s, x, y};
          return true;
        }
      }
    }
    return false;
  });
}

bool segment_exchange_pass(Workspace& ws, const NeighborLists& nl) {
  if (ws.n() < 5) return false;
  return converge(ws, [&](int a, std::vector<int>& touched) {
    const int b = ws.succ(a);
    const int dab = ws.d(a, b);
    for (const int c : nl.of(a)) {
      const int g1 = dab - ws.d(a, c);
      if (g1 <= 0) break;
      if (c == b) continue;
      const int dd = ws.pred(c);
      const std::size_t rel_c = ws.rel(a, c);
      const int g1_open = g1 + ws.d(dd, c);
      for (const int e : nl.of(b)) {
        const int g2 = g1_open - ws.d(b, e);
        if (g2 <= 0) break;
        if (e == a || ws.rel(a, e) < rel_c) continue;
        const int f = ws.succ(e);
        const int delta = ws.d(dd, f) - ws.d(e, f) - g2;
        if (delta < 0) {
          ws.exchange_segments(a, c, e);
          ws.add_length(delta);
          touched = {a, b, c, dd, e, f};
          return true;
        }
      }
    }
    return false;
  });
}

}  // namespace

Tour two_opt(Tour tour, const TspInstance& instance, const NeighborLists& neighbors) {
  if (instance.dimension() < 4) return tour;
  Workspace ws(std::move(tour), instance);
  two_opt_pass(ws, neighbors);
  return std::move(ws).finish();
}

Tour two_half_opt(Tour tour, const TspInstance& instance, const NeighborLists& neighbors) {
  if (instance.dimension() < 4) return tour;
  Workspace ws(std::move(tour), instance);
  do {
    two_opt_pass(ws, neighbors);
  } while (insertion_pass(ws, neighbors));
  return std::move(ws).finish();
}

Tour three_opt(Tour tour, const TspInstance& instance, const NeighborLists& neighbors) {
  if (instance.dimension() < 4) return tour;
  Workspace ws(std::move(tour), instance);
  do {
    do {
      two_opt_pass(ws, neighbors);
    } while (insertion_pass(ws, neighbors));
  } while (segment_exchange_pass(ws, neighbors));
  return std::move(ws).finish();
}

Tour apply_local_search(LocalSearch kind, Tour tour, const TspInstance& instance,
                        const NeighborLists& neighbors) {
  switch (kind) {
    case LocalSearch::kNone: return tour;
    case LocalSearch::kTwoOpt: return two_opt(std::move(tour), instance, neighbors);
    case LocalSearch::kTwoHalfOpt: return two_half_opt(std::move(tour), instance, neighbors);
    case LocalSearch::kThreeOpt: return three_opt(std::move(tour), instance, neighbors);
  }
  return tour;
}

}  // namespace arp
