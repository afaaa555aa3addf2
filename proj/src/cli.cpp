#include "neo/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "neo/errors.hpp"
#include "neo/scenario.hpp"
#include "neo/sim.hpp"
#include "neo/trace_csv.hpp"

namespace neo::cli {

namespace {

bool debug_logging() {
  const char* level = std::getenv("NEO_LOG");
  return level != nullptr && std::string(level) == "debug";
}

std::string resolve_scenario_path(const std::string& path) {
  if (std::filesystem::exists(path) || path.ends_with(".json")) return path;
  return path + ".json";
}

void apply_sets(Scenario& sc, const std::vector<std::string>& sets) {
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    }
    set_param(sc.params, kv.substr(0, eq), kv.substr(eq + 1));
  }
  sc.params.validate();
}

std::string fmt(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string summary_line(const std::string& name, const Outcome& o) {
  std::ostringstream s;
  s << name << ": " << to_string(o.result);
  s << " time_to_goal=" << (o.time_to_goal ? fmt(*o.time_to_goal, 2) + "s" : std::string("-"));
  s << " min_clearance=" << fmt(o.min_clearance, 4) << "m";
  s << " steps=" << o.steps;
  s << " mean_solve=" << fmt(o.mean_solve_ms, 3) << "ms";
  s << " max_solve=" << fmt(o.max_solve_ms, 3) << "ms";
  if (o.left_joint_limits) s << " joint_limits_violated";
  return s.str();
}

}  // namespace

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err) {
  if (options.repeat < 1) {
    err << "error: --repeat must be >= 1\n";
    return kExitUsage;
  }
  const std::string path = resolve_scenario_path(options.scenario);
  std::optional<Scenario> sc;
  try {
    sc.emplace(load_scenario(path));
    if (options.dt) {
      sc->dt = *options.dt;
      sc->validate();
    }
    apply_sets(*sc, options.sets);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::vector<StepTrace> trace;
    Outcome outcome;
    double total_mean = 0.0;
    for (int r = 0; r < options.repeat; ++r) {
      trace = run(*sc);
      outcome = summarize(trace, sc->model);
      total_mean += outcome.mean_solve_ms;
    }
    if (debug_logging()) {
      for (const StepTrace& s : trace) {
        err << "t=" << fmt(s.t, 2) << " status=" << to_string(s.status)
            << " pos_err=" << fmt(s.position_error, 4) << " ang_err=" << fmt(s.angle_error, 4)
            << " solve_ms=" << fmt(s.solve_ms, 3) << '\n';
      }
    }
    if (options.out) write_trace_csv_file(*options.out, trace);
    out << summary_line(sc->name, outcome) << '\n';
    if (options.repeat > 1) {
      out << "mean_solve over " << options.repeat
          << " runs=" << fmt(total_mean / options.repeat, 3) << "ms\n";
    }
    return outcome.result == RunResult::reached ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int bench_command(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  std::ifstream in(options.suite);
  if (!in) {
    err << "error: cannot open suite " << options.suite << '\n';
    return kExitUsage;
  }
  const std::filesystem::path dir = std::filesystem::path(options.suite).parent_path();
  std::vector<Scenario> scenarios;
  std::string line;
  size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto e = line.find_last_not_of(" \t\r");
      std::filesystem::path p = line.substr(b, e - b + 1);
      if (p.is_relative()) p = dir / p;
      const std::string resolved = resolve_scenario_path(p.string());
      if (!std::filesystem::exists(resolved)) {
        err << "error: " << options.suite << ":" << line_no << ": no scenario " << resolved
            << '\n';
        return kExitUsage;
      }
      scenarios.push_back(load_scenario(resolved));
      apply_sets(scenarios.back(), options.sets);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (scenarios.empty()) {
    err << "error: suite " << options.suite << " lists no scenarios\n";
    return kExitUsage;
  }

  const long count = static_cast<long>(scenarios.size());
  std::vector<Outcome> outcomes(scenarios.size());
  std::vector<std::string> errors(scenarios.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      outcomes[i] = summarize(run(scenarios[i]), scenarios[i].model);
    } catch (const std::exception& e) {
      outcomes[i].result = RunResult::solver_failed;
      errors[i] = e.what();
    }
  }

  int reached = 0;
  out << std::left << std::setw(16) << "scenario" << std::setw(15) << "result"
      << std::setw(14) << "time_to_goal" << std::setw(15) << "min_clearance"
      << std::setw(14) << "mean_solve_ms" << "max_solve_ms\n";
  for (size_t i = 0; i < scenarios.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (o.result == RunResult::reached) ++reached;
    out << std::left << std::setw(16) << scenarios[i].name << std::setw(15)
        << to_string(o.result) << std::setw(14)
        << (o.time_to_goal ? fmt(*o.time_to_goal, 2) : std::string("-")) << std::setw(15)
        << fmt(o.min_clearance, 4) << std::setw(14) << fmt(o.mean_solve_ms, 3)
        << fmt(o.max_solve_ms, 3) << '\n';
    if (!errors[i].empty()) err << "error: " << scenarios[i].name << ": " << errors[i] << '\n';
  }
  out << "success rate: " << reached << "/" << scenarios.size() << " ("
      << fmt(100.0 * reached / static_cast<double>(scenarios.size()), 1) << "%)\n";
  return reached == count ? kExitOk : kExitFailure;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"NEO reactive manipulator controller"};
  app.require_subcommand(1);

  RunOptions run_opts;
  double dt = 0.0;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one scenario");
  run_cmd->add_option("scenario", run_opts.scenario, "Scenario file")->required();
  run_cmd->add_option("--out", run_opts.out, "Write the per-step trace as CSV");
  run_cmd->add_option("--set", run_opts.sets, "Override a controller parameter (key=value)");
  CLI::Option* dt_opt = run_cmd->add_option("--dt", dt, "Control period in seconds");
  run_cmd->add_option("--repeat", run_opts.repeat, "Repeat the run and average solve time");

  BenchOptions bench_opts;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run every scenario of a suite");
  bench_cmd->add_option("suite", bench_opts.suite, "Suite file")->required();
  bench_cmd->add_option("--set", bench_opts.sets, "Override a controller parameter (key=value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  if (*run_cmd) {
    if (*dt_opt) run_opts.dt = dt;
    return run_command(run_opts, out, err);
  }
  return bench_command(bench_opts, out, err);
}

}  // namespace neo::cli
