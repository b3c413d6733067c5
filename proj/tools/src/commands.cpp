#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "arp/errors.hpp"
#include "arp/tsplib.hpp"

namespace arp::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

std::string value_text(ObjectiveValue v) { return format_number(v.value); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const auto problem = resolve_problem(config);
  if (config.modes.size() != 1) throw ConfigError("solve: exactly one mode is required");
  const auto mode = ModeRef::parse(config.modes.front());

  ObjectiveValue best;
  std::optional<std::uint64_t> hit;
  std::uint64_t used = 0;
  std::optional<RestartState> state;
  const auto start = std::chrono::steady_clock::now();

  switch (mode.mode) {
    case Mode::kPlain: {
      Replication rep = spawn_replication(problem.factory, config.seed, 1);
      for (std::uint64_t t = 1; t <= config.budget; ++t) {
        const ObjectiveValue v = rep.algorithm->step();
        used = t;
        if (v < best) best = v;
        if (problem.target && v <= *problem.target) {
          hit = t;
          break;
        }
      }
      break;
    }
    case Mode::kRp: {
      config.restart.validate();
      RestartProcedure rp(problem.factory, config.restart, config.seed);
      rp.run(StopRule{config.budget, problem.target});
      best = rp.best();
      hit = rp.target_hit();
      used = rp.pseudo_time();
      if (rp.initialized()) state = rp.state();
      break;
    }
    case Mode::kFixedRestart: {
      const auto traj = fixed_restart_run(problem.factory, mode.period, config.budget, config.seed);
      best = traj.final_best();
      used = traj.length();
      if (problem.target) {
        for (std::size_t t = 1; t <= traj.length(); ++t) {
          if (traj.best(t) <= *problem.target) {
            hit = t;
            break;
          }
        }
      }
      break;
    }
  }

  log << "solve: " << used << " steps in "
      << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  out << "instance " << problem.instance << '\n';
  out << "mode " << config.modes.front() << '\n';
  out << "best " << value_text(best) << '\n';
  out << "optimum " << (problem.target ? value_text(*problem.target) : "unknown") << '\n';
  out << "reached " << (hit ? "yes" : "no") << '\n';
  out << "hit_time " << (hit ? std::to_string(*hit) : "-") << '\n';
  out << "steps " << used << '\n';
  if (state) {
    out << "r " << state->r << '\n';
    out << "T " << state->T << '\n';
    out << "sigma_hat " << state->sigma_hat << '\n';
  }
  return 0;
}

int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const auto problem = resolve_problem(config);
  const auto specs = build_specs(config, problem);

  std::vector<CurveEstimate> estimates;
  for (const auto& spec : specs) {
    log << "experiment: " << spec.instance << ' ' << spec.mode_label() << " m=" << spec.m
        << " budget=" << spec.budget << " ..." << std::flush;
    const auto start = std::chrono::steady_clock::now();
    estimates.push_back(estimate_failure_curve(spec, config.workers));
    log << " f.p. " << format_number(estimates.back().at_budget()) << " ("
        << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s)\n";
  }

  const auto rows = compare(estimates);
  const auto dir = config.output_dir();
  std::filesystem::create_directories(dir);

  std::ostringstream curve, table, trace;
  write_curve_csv(curve, estimates);
  write_table_csv(table, rows);
  write_trace_csv(trace, estimates);
  write_file(dir / "curve.csv", curve.str());
  write_file(dir / "table.csv", table.str());
  write_file(dir / "trace.csv", trace.str());
  log << "experiment: wrote " << (dir / "curve.csv").string() << ", table.csv, trace.csv\n";

  out << table.str();
  return 0;
}

FailureCurve read_curve_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(ParseError::Kind::kMalformed, 0, "empty curve file");
  ++lineno;
  const auto header = split_csv_line(line);
  std::optional<std::size_t> t_col, p_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "t") t_col = i;
    if (header[i] == "p" || header[i] == "pHat") p_col = i;
  }
  if (!t_col || !p_col) {
    throw ParseError(ParseError::Kind::kMalformed, 1, "curve header needs columns 't' and 'p' (or 'pHat')");
  }

  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() <= std::max(*t_col, *p_col)) {
      throw ParseError(ParseError::Kind::kMalformed, lineno, "too few columns");
    }
    std::size_t t = 0;
    double p = 0;
    try {
      std::size_t used = 0;
      t = std::stoull(cells[*t_col], &used);
      if (used != cells[*t_col].size()) throw std::invalid_argument("t");
      p = std::stod(cells[*p_col], &used);
      if (used != cells[*p_col].size()) throw std::invalid_argument("p");
    } catch (const std::exception&) {
      throw ParseError(ParseError::Kind::kMalformed, lineno, "not a number");
    }
    if (t != values.size() + 1) {
      throw ParseError(ParseError::Kind::kMalformed, lineno,
                       "expected t = " + std::to_string(values.size() + 1) + ", got " + std::to_string(t));
    }
    values.push_back(p);
  }
  if (values.empty()) throw ParseError(ParseError::Kind::kMalformed, lineno, "curve has no points");
  try {
    return FailureCurve(std::move(values));
  } catch (const DomainError& e) {
    throw ParseError(ParseError::Kind::kMalformed, 0, e.what());
  }
}

int cmd_tmin(const std::filesystem::path& curve_file, std::ostream& out) {
  std::ifstream in(curve_file);
  if (!in) throw ConfigError("cannot open " + curve_file.string());
  const auto curve = read_curve_csv(in);
  const auto opt = optimal_restart_time(curve);
  out << "t_m " << opt.t_m << '\n';
  out << "g " << format_number(opt.g_min) << '\n';
  return 0;
}

int cmd_check(const std::filesystem::path& instance_file, std::ostream& out) {
  const auto instance = load_tsplib(instance_file);
  out << metric_name(instance.metric()) << ' ' << instance.dimension() << '\n';
  return 0;
}

}  // namespace arp::cli
