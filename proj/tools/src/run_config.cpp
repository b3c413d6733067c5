#include "run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "arp/errors.hpp"
#include "arp/tsplib.hpp"

namespace arp::cli {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(what) + ": not a number: '" + std::string(text) + "'");
  }
  return v;
}

using nlohmann::json;

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!value.is_number_unsigned()) throw ConfigError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) throw ConfigError("");
    }
    return value.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': wrong type (got " + value.dump() + ")");
  }
}

void require_object(const json& doc, const std::string& key) {
  if (!doc.is_object()) throw ConfigError("config key '" + key + "': expected an object");
}

}  // namespace

ProblemRef ProblemRef::parse(std::string_view text) {
  ProblemRef ref;
  if (text.empty()) throw ConfigError("problem: empty");
  const auto parts = split(text, ':');
  if (parts[0] == "boolean") {
    if (parts.size() != 2) throw ConfigError("problem: expected boolean:N");
    ref.kind = Kind::kBoolean;
    ref.bits = parse_number<std::size_t>(parts[1], "problem");
    if (ref.bits < 1) throw ConfigError("problem: boolean needs N >= 1");
  } else if (parts[0] == "synthetic") {
    if (parts.size() != 3 && parts.size() != 4) throw ConfigError("problem: expected synthetic:beta:q[:delay]");
    ref.kind = Kind::kSynthetic;
    ref.beta = parse_number<double>(parts[1], "problem");
    ref.q = parse_number<double>(parts[2], "problem");
    if (parts.size() == 4) ref.delay = parse_number<std::size_t>(parts[3], "problem");
  } else {
    ref.kind = Kind::kTsp;
    ref.path = std::string(text);
  }
  return ref;
}

ModeRef ModeRef::parse(std::string_view text) {
  if (text == "plain") return {Mode::kPlain, 0};
  if (text == "rp") return {Mode::kRp, 0};
  constexpr std::string_view kFixed = "fixed-restart:";
  if (text.substr(0, kFixed.size()) == kFixed) {
    const auto period = parse_number<std::size_t>(text.substr(kFixed.size()), "mode");
    if (period < 1) throw ConfigError("mode: restart period must be >= 1");
    return {Mode::kFixedRestart, period};
  }
  throw ConfigError("mode: expected plain, rp or fixed-restart:T, got '" + std::string(text) + "'");
}

MmasConfig MmasOverrides::resolve(MmasConfig base) const {
  if (ants) base.ants = *ants;
  if (alpha) base.alpha = *alpha;
  if (beta) base.beta = *beta;
  if (rho) base.rho = *rho;
  if (candidates) base.candidates = *candidates;
  if (local_search) base.local_search = parse_local_search(*local_search);
  if (best_so_far_period) base.best_so_far_period = *best_so_far_period;
  base.validate();
  return base;
}

RunConfig RunConfig::paper_preset() {
  RunConfig c;
  c.restart = RestartConfig{};  // r0=20, T0=100, c1=1.2, c2=1.1, lambda=0.8
  c.mmas = MmasOverrides{};     // per-problem MMAS defaults
  c.modes = {"plain", "rp"};
  return c;
}

void RunConfig::merge(const json& doc) {
  require_object(doc, "<root>");
  for (const auto& [key, value] : doc.items()) {
    if (key == "problem") {
      problem = get_as<std::string>(value, key);
    } else if (key == "mode") {
      modes = {get_as<std::string>(value, key)};
    } else if (key == "modes") {
      modes = get_as<std::vector<std::string>>(value, key);
    } else if (key == "m") {
      m = get_as<std::size_t>(value, key);
    } else if (key == "budget") {
      budget = get_as<std::uint64_t>(value, key);
    } else if (key == "seed") {
      seed = get_as<std::uint64_t>(value, key);
    } else if (key == "workers") {
      workers = get_as<std::size_t>(value, key);
    } else if (key == "output") {
      output = get_as<std::string>(value, key);
    } else if (key == "registry") {
      registry = get_as<std::string>(value, key);
    } else if (key == "target") {
      target = get_as<double>(value, key);
    } else if (key == "restart") {
      require_object(value, key);
      for (const auto& [sub, v] : value.items()) {
        const std::string name = "restart." + sub;
        if (sub == "r0") {
          restart.r0 = get_as<std::size_t>(v, name);
        } else if (sub == "T0") {
          restart.T0 = get_as<std::size_t>(v, name);
        } else if (sub == "c1") {
          restart.c1 = get_as<double>(v, name);
        } else if (sub == "c2") {
          restart.c2 = get_as<double>(v, name);
        } else if (sub == "lambda") {
          restart.lambda = get_as<double>(v, name);
        } else if (sub == "lambda_step") {
          if (!restart.lambda_schedule) restart.lambda_schedule.emplace();
          restart.lambda_schedule->step = get_as<double>(v, name);
        } else if (sub == "lambda_max") {
          if (!restart.lambda_schedule) restart.lambda_schedule.emplace();
          restart.lambda_schedule->max = get_as<double>(v, name);
        } else {
          throw ConfigError("unknown config key '" + name + "'");
        }
      }
    } else if (key == "mmas") {
      require_object(value, key);
      for (const auto& [sub, v] : value.items()) {
        const std::string name = "mmas." + sub;
        if (sub == "ants") {
          mmas.ants = get_as<std::size_t>(v, name);
        } else if (sub == "alpha") {
          mmas.alpha = get_as<double>(v, name);
        } else if (sub == "beta") {
          mmas.beta = get_as<double>(v, name);
        } else if (sub == "rho") {
          mmas.rho = get_as<double>(v, name);
        } else if (sub == "candidates") {
          mmas.candidates = get_as<std::size_t>(v, name);
        } else if (sub == "local_search") {
          mmas.local_search = get_as<std::string>(v, name);
        } else if (sub == "best_so_far_period") {
          mmas.best_so_far_period = get_as<std::size_t>(v, name);
        } else {
          throw ConfigError("unknown config key '" + name + "'");
        }
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void RunConfig::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  merge(doc);
}

std::filesystem::path RunConfig::output_dir() const {
  if (!output.empty()) return output;
  if (const char* env = std::getenv("ARP_OUTPUT_DIR"); env && *env) return env;
  return "arp-out";
}

ResolvedProblem resolve_problem(const RunConfig& config) {
  const auto ref = ProblemRef::parse(config.problem);
  ResolvedProblem out;
  switch (ref.kind) {
    case ProblemRef::Kind::kTsp: {
      auto instance = load_tsplib(ref.path);
      out.instance = instance.name();
      if (!config.registry.empty()) {
        const auto reg = load_registry(config.registry);
        if (auto it = reg.find(out.instance); it != reg.end()) {
          out.target = ObjectiveValue(static_cast<double>(it->second));
        }
      }
      const auto mmas = config.mmas.resolve(MmasConfig{});
      auto problem = std::make_shared<const TspProblem>(std::move(instance), mmas);
      out.factory = make_tsp_mmas_factory(std::move(problem), mmas);
      break;
    }
    case ProblemRef::Kind::kBoolean: {
      BitstringProblem problem(ref.bits);
      out.instance = "boolean" + std::to_string(ref.bits);
      out.target = problem.optimum();
      out.factory = make_bitstring_mmas_factory(problem, config.mmas.resolve(MmasConfig::bitstring_defaults()));
      break;
    }
    case ProblemRef::Kind::kSynthetic: {
      std::ostringstream name;
      name << "synthetic-" << format_number(ref.beta) << '-' << format_number(ref.q);
      if (ref.delay) name << '-' << ref.delay;
      out.instance = name.str();
      out.target = SyntheticBasinAlgorithm::kOptimum;
      out.factory = make_synthetic_factory(ref.beta, ref.q, ref.delay);
      break;
    }
  }
  if (config.target) out.target = ObjectiveValue(*config.target);
  return out;
}

std::vector<ExperimentSpec> build_specs(const RunConfig& config, const ResolvedProblem& problem) {
  if (config.modes.empty()) throw ConfigError("modes: at least one mode is required");
  std::vector<ExperimentSpec> specs;
  for (const auto& text : config.modes) {
    const auto mode = ModeRef::parse(text);
    ExperimentSpec spec;
    spec.instance = problem.instance;
    spec.factory = problem.factory;
    spec.mode = mode.mode;
    spec.restart_period = mode.period;
    spec.m = config.m;
    spec.budget = config.budget;
    spec.target = problem.target;
    spec.master_seed = config.seed;
    spec.rp = config.restart;
    if (!spec.target) {
      throw ConfigError("no target value for instance '" + problem.instance +
                        "': set 'target' or a 'registry' that lists it");
    }
    spec.validate();
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace arp::cli
