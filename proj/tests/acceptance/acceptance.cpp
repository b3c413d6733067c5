// Acceptance checks. Prints one PASS/FAIL line per criterion, plus indented
// detail lines, and exits non-zero if any criterion failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "arp/harness.hpp"
#include "arp/local_search.hpp"
#include "arp/mmas.hpp"
#include "arp/restart.hpp"
#include "arp/theory.hpp"
#include "arp/tsplib.hpp"

using namespace arp;
namespace fs = std::filesystem;

namespace {

const std::size_t kWorkers = std::max(1u, std::thread::hardware_concurrency());

struct Outcome {
  bool pass = false;
  std::string detail;
};

void note(const std::string& s) { std::printf("    %s\n", s.c_str()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Independent oracle: exhaustive scan of g over the analytic curve.
std::size_t brute_force_t_m(const FailureCurve& p) {
  std::size_t best_t = 0;
  double best_g = INFINITY;
  for (std::size_t t = 1; t <= p.length(); ++t) {
    const double x = p.at(t);
    if (x <= 0.0 || x >= 1.0) continue;
    const double g = 1.0 / ((1.0 - std::pow(x, 1.0 / static_cast<double>(t))) * x);
    if (g < best_g) best_g = g, best_t = t;
  }
  return best_t;
}

// Final sigma_hat of `runs` restart-procedure runs without a target stop.
std::vector<std::size_t> final_sigma_hats(const AlgorithmFactory& factory, std::size_t runs,
                                          std::uint64_t budget, std::uint64_t master) {
  std::vector<std::size_t> out(runs);
  parallel_for(runs, kWorkers, [&](std::size_t j) {
    RestartProcedure rp(factory, RestartConfig{}, derive_seed(master, j + 1));
    rp.run(StopRule{budget, std::nullopt});
    out[j] = rp.state().sigma_hat;
  });
  return out;
}

std::size_t count_within(const std::vector<std::size_t>& xs, std::size_t t_m, double tol) {
  return std::count_if(xs.begin(), xs.end(), [&](std::size_t s) {
    return std::abs(static_cast<double>(s) - static_cast<double>(t_m)) <= tol * static_cast<double>(t_m);
  });
}

std::string histogram(const std::vector<std::size_t>& xs) {
  std::vector<std::size_t> v = xs;
  std::sort(v.begin(), v.end());
  std::ostringstream os;
  os << "min " << v.front() << ", median " << v[v.size() / 2] << ", max " << v.back();
  return os.str();
}

Outcome criterion1() {
  const double beta = 0.3, q = 0.05;
  const std::size_t t_m = brute_force_t_m(synthetic_basin_curve(beta, q, 10000));
  const auto sigmas = final_sigma_hats(make_synthetic_factory(beta, q), 100, 1000000, 101);
  const std::size_t ok = count_within(sigmas, t_m, 0.10);
  Outcome o{ok >= 90, fmt("beta=0.3 q=0.05: t_m=%zu, final sigma_hat within 10%% in %zu/100 runs (need >= 90); ",
                          t_m, ok) +
                          "sigma_hat " + histogram(sigmas)};
  return o;
}

void criterion1_delayed_note() {
  const double beta = 0.3, q = 0.02;
  const std::size_t delay = 100;
  const std::size_t t_m = brute_force_t_m(synthetic_basin_curve(beta, q, 10000, delay));
  const auto sigmas = final_sigma_hats(make_synthetic_factory(beta, q, delay), 100, 1000000, 102);
  note(fmt("note: delayed fixture beta=0.3 q=0.02 delay=100: t_m=%zu, within 10%% in %zu/100 runs; ", t_m,
           count_within(sigmas, t_m, 0.10)) +
       "sigma_hat " + histogram(sigmas));
}

Outcome criterion2() {
  const double beta = 0.3, q = 0.05;
  const auto factory = make_synthetic_factory(beta, q);
  const auto curve = synthetic_basin_curve(beta, q, 1000);
  const std::size_t runs = 1000000;
  struct Group {
    std::size_t period;
    std::vector<std::uint64_t> ks;
  };
  const std::vector<Group> grid{{1, {3, 10}}, {5, {7, 23}}, {20, {20, 61}}, {50, {49, 130}}, {150, {100, 301}}};
  bool pass = true;
  double worst = 0;
  std::ostringstream os;
  for (const auto& g : grid) {
    const std::uint64_t budget = g.ks.back();
    std::vector<std::vector<std::uint32_t>> counts(kWorkers, std::vector<std::uint32_t>(g.ks.size(), 0));
    parallel_for(kWorkers, kWorkers, [&](std::size_t w) {
      for (std::size_t j = w; j < runs; j += kWorkers) {
        const auto traj = fixed_restart_run(factory, g.period, budget, derive_seed(7000 + g.period, j));
        for (std::size_t i = 0; i < g.ks.size(); ++i) counts[w][i] += traj.best(g.ks[i]) > ObjectiveValue(0);
      }
    });
    for (std::size_t i = 0; i < g.ks.size(); ++i) {
      std::uint64_t c = 0;
      for (const auto& cw : counts) c += cw[i];
      const double mc = static_cast<double>(c) / runs;
      const double exact = restart_tail_probability(curve, g.period, g.ks[i]);
      const double se = std::sqrt(exact * (1 - exact) / runs);
      const double z = se > 0 ? std::abs(mc - exact) / se : (mc == exact ? 0 : INFINITY);
      worst = std::max(worst, z);
      pass = pass && z <= 3.0;
      os << " (T=" << g.period << ",k=" << g.ks[i] << ") " << fmt("%.5f/%.5f", exact, mc);
    }
  }
  return {pass, fmt("10 grid points, 1e6 runs each; max |MC - exact| = %.2f SE (need <= 3)", worst) + "\n    exact/MC:" +
                    os.str()};
}

Outcome criterion3() {
  Rng rng(303);
  std::size_t checks = 0, violations = 0;
  double worst_ratio = 0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = 5 + uniform_index(rng, 200);
    std::vector<double> v(n);
    double cur = 1.0;
    const bool start_at_one = uniform_index(rng, 3) == 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (!(start_at_one && t < n / 4)) cur *= 0.7 + 0.3 * uniform01(rng);
      v[t] = cur;
    }
    FailureCurve p(v);
    for (std::size_t T = 1; T <= n; ++T) {
      const double bound = expected_time_bound(p, T);
      if (std::isinf(bound)) continue;  // p(T) in {0, 1}: bound is vacuous
      const auto s = expected_optimization_time(p, T);
      ++checks;
      const double e = s.value + s.tail_bound;
      worst_ratio = std::max(worst_ratio, e / bound);
      if (e > bound * (1 + 1e-12)) ++violations;
    }
  }
  return {violations == 0 && checks > 0,
          fmt("%zu (curve, T) pairs checked, %zu violations, max E/bound = %.4f", checks, violations, worst_ratio)};
}

Outcome criterion4() {
  const std::size_t n = 20;
  const BitstringProblem problem(n);
  ExperimentSpec s;
  s.instance = "boolean20";
  s.factory = make_bitstring_mmas_factory(problem, MmasConfig::bitstring_defaults());
  s.m = 200;
  s.budget = 20000;
  s.target = problem.optimum();
  s.master_seed = 404;
  s.mode = Mode::kPlain;
  const double plain = estimate_failure_curve(s, kWorkers).at_budget();
  s.mode = Mode::kRp;
  const double rp = estimate_failure_curve(s, kWorkers).at_budget();
  return {rp <= 0.2 * plain && plain >= 0.1,
          fmt("N=20, m=200, T_c=2e4: plain f.p. %.3f (need >= 0.1), rp f.p. %.3f (need <= %.3f)", plain, rp,
              0.2 * plain)};
}

Outcome criterion5() {
  const auto reg = load_registry(ARP_DATA_DIR "/registry.txt");
  const auto inst = load_tsplib(ARP_DATA_DIR "/instances/ring50.tsp");
  MmasConfig cfg;
  cfg.ants = 5;
  cfg.rho = 0.2;
  cfg.local_search = LocalSearch::kTwoOpt;
  auto problem = std::make_shared<const TspProblem>(inst, cfg);
  ExperimentSpec s;
  s.instance = inst.name();
  s.factory = make_tsp_mmas_factory(problem, cfg);
  s.m = 100;
  s.budget = 100000;
  s.target = ObjectiveValue(static_cast<double>(reg.at(inst.name())));
  s.master_seed = 5;
  s.mode = Mode::kRp;
  const auto rp = estimate_failure_curve(s, kWorkers);
  s.mode = Mode::kPlain;
  const auto plain = estimate_failure_curve(s, kWorkers);
  const auto hits = [](const CurveEstimate& e) {
    return std::count_if(e.hit_times.begin(), e.hit_times.end(), [](const auto& h) { return h.has_value(); });
  };
  const auto rp_hits = hits(rp), plain_hits = hits(plain);
  return {rp_hits >= 95 && plain_hits < rp_hits,
          fmt("%s (optimum %lld), MMAS+2opt ants=5 rho=0.2, T_c=1e5: rp reached optimum in %ld/100 (need >= 95), "
              "plain in %ld/100 (need fewer)",
              inst.name().c_str(), static_cast<long long>(reg.at(inst.name())), static_cast<long>(rp_hits),
              static_cast<long>(plain_hits))};
}

// -- criterion 6 helpers ------------------------------------------------------

class Uniform final : public ResumableAlgorithm {
 public:
  Uniform(std::uint64_t seed, std::uint64_t range) : rng_(seed), range_(range) {}
  ObjectiveValue step() override {
    ++steps_;
    return ObjectiveValue(static_cast<double>(uniform_index(rng_, range_)));
  }
  std::size_t steps() const noexcept override { return steps_; }

 private:
  Rng rng_;
  std::uint64_t range_;
  std::size_t steps_ = 0;
};

TspInstance random_instance(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {double(uniform_index(rng, 1000)), double(uniform_index(rng, 1000))};
  return TspInstance("rand", Metric::kEuc2D, pts);
}

bool monotone_and_conserved(std::string& why) {
  Rng rng(606);
  for (int run = 0; run < 1000; ++run) {
    RestartConfig cfg;
    cfg.r0 = 1 + uniform_index(rng, 8);
    cfg.T0 = 1 + uniform_index(rng, 30);
    cfg.c1 = 1.05 + uniform01(rng);
    cfg.c2 = 1.05 + uniform01(rng);
    cfg.lambda = 0.1 + 0.85 * uniform01(rng);
    const std::uint64_t range = 2 + uniform_index(rng, 500);
    AlgorithmFactory f = [range](std::uint64_t seed) -> std::unique_ptr<ResumableAlgorithm> {
      return std::make_unique<Uniform>(seed, range);
    };
    RestartProcedure rp(f, cfg, rng());
    const StopRule stop{2000 + uniform_index(rng, 20000), std::nullopt};
    if (!rp.initialize(stop)) continue;
    do {
      const auto& st = rp.state();
      if (rp.pseudo_time() != static_cast<std::uint64_t>(st.r) * st.T) {
        why = fmt("run %d iteration %zu: pseudo-time %llu != r*T = %zu*%zu", run, st.k,
                  static_cast<unsigned long long>(rp.pseudo_time()), st.r, st.T);
        return false;
      }
      if (!st.p_hat.is_nonincreasing()) {
        why = fmt("run %d iteration %zu: p_hat increases", run, st.k);
        return false;
      }
    } while (rp.decide_and_grow(stop));
  }
  return true;
}

bool experiment_curves_monotone(std::string& why) {
  for (auto mode : {Mode::kPlain, Mode::kRp, Mode::kFixedRestart}) {
    ExperimentSpec s;
    s.instance = "synthetic";
    s.factory = make_synthetic_factory(0.3, 0.05);
    s.mode = mode;
    s.restart_period = 10;
    s.m = 100;
    s.budget = 5000;
    s.target = SyntheticBasinAlgorithm::kOptimum;
    s.master_seed = 6;
    if (!estimate_failure_curve(s, kWorkers).p_hat.is_nonincreasing()) {
      why = "estimated failure curve increases for mode " + s.mode_label();
      return false;
    }
  }
  return true;
}

bool pheromones_clamped(std::string& why) {
  for (auto ls : {LocalSearch::kNone, LocalSearch::kTwoOpt, LocalSearch::kTwoHalfOpt, LocalSearch::kThreeOpt}) {
    MmasConfig cfg;
    cfg.local_search = ls;
    cfg.ants = 5;
    cfg.rho = 0.3;
    auto prob = std::make_shared<const TspProblem>(random_instance(30, 61), cfg);
    TspMmas m(prob, cfg, 62);
    for (int i = 0; i < 200; ++i) {
      m.step();
      if (!m.trails().within_limits()) {
        why = "TSP trails outside limits with local search " + std::string(local_search_name(ls));
        return false;
      }
    }
  }
  BitstringMmas b(BitstringProblem(30), MmasConfig::bitstring_defaults(), 63);
  for (int i = 0; i < 2000; ++i) {
    b.step();
    if (!b.trails().within_limits()) {
      why = "bitstring trails outside limits";
      return false;
    }
  }
  return true;
}

bool local_search_ok(std::string& why) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_instance(40, 6000 + seed);
    NeighborLists nl(inst, 20);
    std::vector<int> order(inst.dimension());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const auto start = make_tour(inst, order);
    const auto l2 = two_opt(start, inst, nl);
    const auto l25 = two_half_opt(start, inst, nl);
    const auto l3 = three_opt(start, inst, nl);
    for (const auto* t : {&l2, &l25, &l3}) {
      if (t->length > start.length || t->length != tour_length(inst, t->order)) {
        why = fmt("seed %llu: local search worsened the tour or misreported its length",
                  static_cast<unsigned long long>(seed));
        return false;
      }
    }
    if (!(l3.length <= l25.length && l25.length <= l2.length)) {
      why = fmt("seed %llu: 3opt %lld, 2.5opt %lld, 2opt %lld not nested", static_cast<unsigned long long>(seed),
                static_cast<long long>(l3.length), static_cast<long long>(l25.length),
                static_cast<long long>(l2.length));
      return false;
    }
  }
  return true;
}

bool tsplib_spot_values(std::string& why) {
  struct Case {
    Metric metric;
    Point a, b;
    std::int64_t expect;
  };
  const std::vector<Case> cases{
      {Metric::kEuc2D, {0, 0}, {3, 4}, 5},   {Metric::kEuc2D, {0, 0}, {1, 1}, 1},
      {Metric::kEuc2D, {0, 0}, {1.5, 0}, 2}, {Metric::kEuc2D, {2, 3}, {7, 15}, 13},
      {Metric::kAtt, {0, 0}, {3, 4}, 2},     {Metric::kAtt, {0, 0}, {10, 0}, 4},
      {Metric::kAtt, {0, 0}, {0, 20}, 7},    {Metric::kAtt, {0, 0}, {30, 40}, 16},
  };
  for (const auto& c : cases) {
    const auto d = metric_distance(c.metric, c.a, c.b);
    if (d != c.expect) {
      why = fmt("%s distance (%g,%g)-(%g,%g) = %lld, expected %lld", std::string(metric_name(c.metric)).c_str(),
                c.a.x, c.a.y, c.b.x, c.b.y, static_cast<long long>(d), static_cast<long long>(c.expect));
      return false;
    }
  }
  return true;
}

Outcome criterion6() {
  const std::vector<std::pair<const char*, std::function<bool(std::string&)>>> suites{
      {"p_hat monotone + pseudo-time conservation (1000 traces)", monotone_and_conserved},
      {"estimated curves monotone", experiment_curves_monotone},
      {"pheromone clamping", pheromones_clamped},
      {"local search non-worsening + nesting (100 seeds)", local_search_ok},
      {"TSPLIB spot values", tsplib_spot_values},
  };
  bool pass = true;
  std::string detail;
  for (const auto& [name, fn] : suites) {
    std::string why;
    const bool ok = fn(why);
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : "; ") + name + (ok ? " ok" : " FAILED: " + why);
  }
  return {pass, detail};
}

struct ModeComparison {
  double fixed = 0, rp = 0, plain = 0;
  bool crosses = false;
  std::uint64_t cross_at = 0;
};

ModeComparison compare_modes(double beta, double q, std::size_t delay, std::uint64_t budget, std::uint64_t seed) {
  const std::size_t t_m = brute_force_t_m(synthetic_basin_curve(beta, q, 10000, delay));
  ExperimentSpec s;
  s.instance = "synthetic";
  s.factory = make_synthetic_factory(beta, q, delay);
  s.m = 1000;
  s.budget = budget;
  s.target = SyntheticBasinAlgorithm::kOptimum;
  s.master_seed = seed;
  s.mode = Mode::kPlain;
  const auto plain = estimate_failure_curve(s, kWorkers);
  s.mode = Mode::kRp;
  const auto rp = estimate_failure_curve(s, kWorkers);
  s.mode = Mode::kFixedRestart;
  s.restart_period = t_m;
  const auto fixed = estimate_failure_curve(s, kWorkers);

  ModeComparison out{fixed.at_budget(), rp.at_budget(), plain.at_budget()};
  // A learning phase where rp is not below plain, after which rp stays below
  // plain through the horizon.
  std::uint64_t last_not_below = 0;
  for (std::uint64_t t = 1; t <= budget; ++t)
    if (rp.p_hat.at(t) >= plain.p_hat.at(t)) last_not_below = t;
  out.crosses = last_not_below > 0 && last_not_below < budget;
  out.cross_at = last_not_below + 1;
  return out;
}

Outcome criterion7() {
  const std::size_t t_m = brute_force_t_m(synthetic_basin_curve(0.3, 0.05, 10000));
  const auto r = compare_modes(0.3, 0.05, 0, 100000, 707);
  const bool pass = std::abs(r.fixed - r.rp) <= 0.05 && r.crosses;
  Outcome o{pass, fmt("beta=0.3 q=0.05, m=1000, T_c=1e5: fixed-restart(t_m=%zu) %.3f, rp %.3f (|diff| <= 0.05), "
                      "plain %.3f; rp below plain from t=%llu on",
                      t_m, r.fixed, r.rp, r.plain, static_cast<unsigned long long>(r.cross_at))};
  if (!r.crosses) o.detail += " (no crossing)";
  return o;
}

void criterion7_delayed_note() {
  const std::size_t t_m = brute_force_t_m(synthetic_basin_curve(0.3, 0.02, 10000, 100));
  const auto r = compare_modes(0.3, 0.02, 100, 100000, 708);
  note(fmt("note: delayed fixture beta=0.3 q=0.02 delay=100, T_c=1e5: fixed-restart(t_m=%zu) %.3f, rp %.3f, "
           "plain %.3f; rp below plain from t=%llu%s",
           t_m, r.fixed, r.rp, r.plain, static_cast<unsigned long long>(r.cross_at),
           r.crosses ? "" : " (no crossing)"));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion8() {
  const auto root = fs::temp_directory_path() / "arp-acceptance-determinism";
  fs::remove_all(root);
  std::string detail;
  bool pass = true;
  const std::vector<std::string> problems{"synthetic:0.3:0.05", "boolean:16"};
  for (const auto& problem : problems) {
    std::vector<std::string> outputs;
    for (int workers : {1, 4}) {
      const auto dir = root / (problem.substr(0, problem.find(':')) + "-w" + std::to_string(workers));
      const std::string cmd = std::string(ARP_CLI) + " experiment " + problem +
                              " --mode plain --mode rp --mode fixed-restart:50 -m 12 --budget 4000 --seed 8" +
                              " --workers " + std::to_string(workers) + " --output " + dir.string() +
                              " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        return {false, "experiment command failed: " + cmd};
      }
      outputs.push_back(slurp(dir / "curve.csv") + '\x1e' + slurp(dir / "table.csv") + '\x1e' +
                        slurp(dir / "trace.csv"));
    }
    const bool same = outputs[0] == outputs[1] && outputs[0].size() > 3;
    pass = pass && same;
    detail += (detail.empty() ? "" : "; ") + problem + (same ? " identical" : " DIFFER") +
              fmt(" (%zu bytes)", outputs[0].size());
  }
  return {pass, "workers 1 vs 4, curve/table/trace CSVs: " + detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s  %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    if (id == 1) criterion1_delayed_note();
    if (id == 7) criterion7_delayed_note();
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
