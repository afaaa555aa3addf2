// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "neo/collision.hpp"
#include "neo/controller.hpp"
#include "neo/kinematics.hpp"
#include "neo/manipulability.hpp"
#include "neo/qp.hpp"
#include "neo/scenario.hpp"
#include "neo/sim.hpp"
#include "oracles.hpp"

using namespace neo;

namespace {

const std::string kData = NEO_DATA_DIR;

enum class Verdict { pass, fail, not_reproducible };

struct Report {
  Verdict verdict;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Eigen::MatrixXd> slices(const Hessian& h, int rows = 6) {
  std::vector<Eigen::MatrixXd> out;
  for (const Jacobian& s : h) out.emplace_back(s.topRows(rows));
  return out;
}

Report jacobian_hessian_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const RobotModel m = make_panda();
  oracle::Rng rng(1001);
  double jerr = 0.0, herr = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd q = oracle::random_configuration(m, rng);
    jerr = std::max(jerr, (jacobian(m, q) - oracle::fd_jacobian(m, q)).cwiseAbs().maxCoeff());
    const Hessian h = hessian(m, q);
    const Hessian fd = oracle::fd_hessian(m, q);
    for (size_t k = 0; k < h.size(); ++k) {
      herr = std::max(herr, (h[k] - fd[k]).cwiseAbs().maxCoeff());
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = jerr < 1e-6 && herr < 1e-5 && secs < 10.0;
  return {ok ? Verdict::pass : Verdict::fail,
          "200 configs, max |J err|=" + fmt("%.2e", jerr) + ", max |H err|=" + fmt("%.2e", herr) +
              ", " + fmt("%.2f", secs) + " s"};
}

Report manipulability_gradient() {
  const RobotModel m = make_panda();
  oracle::Rng rng(1002);
  double err = 0.0;
  int checked = 0;
  while (checked < 100) {
    const Eigen::VectorXd q = oracle::random_configuration(m, rng);
    const Jacobian j = jacobian(m, q);
    const double mu = manipulability(j);
    if (mu < 1e-3) continue;
    const Eigen::VectorXd g = manipulability_jacobian(j, slices(hessian(m, j)), mu);
    err = std::max(err, (g - oracle::fd_manipulability_gradient(m, q)).cwiseAbs().maxCoeff());
    ++checked;
  }
  const RobotModel planar = make_planar_arm({0.8, 0.6});
  double planar_err = 0.0;
  for (double q2 : {0.2, 0.7, M_PI / 4, M_PI / 2, 1.9, 2.8}) {
    const Jacobian j = jacobian(planar, Eigen::Vector2d(0.3, q2));
    const Eigen::MatrixXd jp = j.topRows(2);
    const Eigen::VectorXd g =
        manipulability_jacobian(jp, slices(hessian(planar, j), 2), manipulability(jp));
    planar_err = std::max({planar_err, std::abs(g[0]), std::abs(g[1] - 0.8 * 0.6 * std::cos(q2))});
  }
  const bool ok = err < 1e-5 && planar_err < 1e-10;
  return {ok ? Verdict::pass : Verdict::fail,
          "100 configs, max |J_m err|=" + fmt("%.2e", err) +
              ", planar 2R analytic err=" + fmt("%.2e", planar_err)};
}

Report qp_oracle() {
  oracle::Rng rng(1003);
  std::uniform_int_distribution<int> vars(1, 4), ineq(0, 3), eq(0, 1);
  double obj_gap = 0.0, arg_gap = 0.0, kkt = 0.0;
  int non_optimal = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = vars(rng);
    const QPProblem p = oracle::random_qp(rng, n, ineq(rng), n > 1 ? eq(rng) : 0);
    const auto ref = oracle::enumerate_qp(p);
    const QPSolution s = solve(p);
    if (!ref || s.status != QPStatus::optimal) {
      ++non_optimal;
      continue;
    }
    obj_gap = std::max(obj_gap, std::abs(s.objective - ref->objective));
    arg_gap = std::max(arg_gap, (s.x - ref->x).cwiseAbs().maxCoeff());
    kkt = std::max(kkt, s.kkt_residual);
  }
  const bool ok = non_optimal == 0 && obj_gap < 1e-6 && arg_gap < 1e-5 && kkt <= 1e-8;
  return {ok ? Verdict::pass : Verdict::fail,
          "1000 QPs, objective gap=" + fmt("%.2e", obj_gap) + ", argument gap=" +
              fmt("%.2e", arg_gap) + ", max KKT=" + fmt("%.2e", kkt) +
              ", non-optimal=" + std::to_string(non_optimal)};
}

Report distance_jacobian_consistency() {
  const RobotModel m = make_panda();
  oracle::Rng rng(1004);
  const double h = 1e-6;
  double err = 0.0;
  int samples = 0;
  for (int traj = 0; traj < 20; ++traj) {
    Eigen::VectorXd q = oracle::random_configuration(m, rng, 0.3);
    const Eigen::VectorXd qd = oracle::random_vector(m.dof(), rng);
    const Obstacle start{oracle::random_vector(3, rng), 0.05,
                         oracle::random_vector(3, rng, -0.3, 0.3)};
    for (int k = 0; k < 10; ++k) {
      const double t = 0.02 * k;
      const Eigen::VectorXd qt = q + qd * t;
      const Obstacle o{start.center + start.velocity * t, start.radius, start.velocity};
      for (const LinkSphere& shape : m.link_shapes()) {
        const DistanceWitness w = closest_witness(m, qt, shape, o);
        const double predicted = distance_jacobian(m, qt, w).dot(qd) + w.n_or.dot(o.velocity);
        auto d_at = [&](double s) {
          const Obstacle moved{o.center + o.velocity * s, o.radius, o.velocity};
          return closest_witness(m, qt + qd * s, shape, moved).d;
        };
        err = std::max(err, std::abs(predicted - (d_at(h) - d_at(-h)) / (2 * h)));
        ++samples;
      }
    }
  }
  return {err < 1e-6 ? Verdict::pass : Verdict::fail,
          std::to_string(samples) + " samples on 20 trajectories, max |d_dot err|=" +
              fmt("%.2e", err)};
}

struct ScenarioRun {
  Scenario scenario;
  std::vector<StepTrace> trace;
  Outcome outcome;
};

ScenarioRun run_named(const std::string& name, const std::function<void(Scenario&)>& edit = {}) {
  Scenario sc = load_scenario(kData + "/scenarios/" + name + ".json");
  if (edit) edit(sc);
  auto trace = run(sc);
  const Outcome o = summarize(trace, sc.model);
  return {std::move(sc), std::move(trace), o};
}

std::vector<double> per_obstacle_min(const ScenarioRun& r) {
  std::vector<double> out(r.scenario.obstacles.size(), std::numeric_limits<double>::infinity());
  for (const StepTrace& s : r.trace) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], s.clearance[i]);
  }
  return out;
}

Report experiment_1a() {
  const ScenarioRun r = run_named("exp1a");
  const bool reached = r.outcome.result == RunResult::reached && *r.outcome.time_to_goal <= 15.0;
  const bool ok = reached && r.outcome.min_clearance >= 0.045;
  return {ok ? Verdict::pass : Verdict::fail,
          "result=" + to_string(r.outcome.result) + ", time_to_goal=" +
              (r.outcome.time_to_goal ? fmt("%.2f", *r.outcome.time_to_goal) + " s" : "-") +
              ", min clearance=" + fmt("%.4f", r.outcome.min_clearance) + " m"};
}

Report experiment_1b_1c() {
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"exp1b", "exp1c"}) {
    const ScenarioRun r = run_named(name);
    const std::vector<double> mins = per_obstacle_min(r);
    detail << name << ": " << to_string(r.outcome.result);
    for (size_t i = 0; i < mins.size(); ++i) {
      detail << ", sphere " << i << " min " << fmt("%.4f", mins[i]) << " m";
      ok = ok && mins[i] >= 0.045;
    }
    ok = ok && r.outcome.result == RunResult::reached;
    if (std::string(name) == "exp1c") {
      double goal_stop = 0.0;
      for (const GoalSegment& s : r.scenario.goal.segments) {
        goal_stop = std::max(goal_stop, s.start + s.duration);
      }
      const bool after = r.outcome.time_to_goal && *r.outcome.time_to_goal >= goal_stop;
      ok = ok && after;
      detail << ", goal stops at " << fmt("%.1f", goal_stop) << " s, reached at "
             << (r.outcome.time_to_goal ? fmt("%.2f", *r.outcome.time_to_goal) + " s" : "-");
    } else {
      detail << "; ";
    }
  }
  return {ok ? Verdict::pass : Verdict::fail, detail.str()};
}

Report ablation() {
  const ScenarioRun r = run_named("exp1a", [](Scenario& sc) { sc.params.xi = 0.0; });
  const bool ok = r.outcome.min_clearance < 0.0;
  return {ok ? Verdict::pass : Verdict::fail,
          "xi=0 on exp1a: result=" + to_string(r.outcome.result) + ", min clearance=" +
              fmt("%.4f", r.outcome.min_clearance) + " m at t=" + fmt("%.2f", r.trace.back().t) +
              " s"};
}

Report timing() {
  using clock = std::chrono::steady_clock;
  double total = 0.0, worst = 0.0;
  int steps = 0;
  for (const char* name : {"exp1a", "exp1b", "exp1c"}) {
    const ScenarioRun r = run_named(name);
    for (const StepTrace& s : r.trace) {
      const Pose goal = r.scenario.goal.at(s.t);
      const std::vector<Obstacle> obstacles = r.scenario.obstacles_at(s.t);
      const Assembly a = assemble(r.scenario.model, s.q, goal, obstacles, r.scenario.params);
      if (a.info.obstacle_rows == 0) continue;
      const auto t0 = clock::now();
      const ControlStep c = step(r.scenario.model, s.q, goal, obstacles, r.scenario.params);
      const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      if (c.status == ControlStatus::failed) continue;
      total += ms;
      worst = std::max(worst, ms);
      ++steps;
    }
  }
  const double mean = steps > 0 ? total / steps : 0.0;
  const bool ok = steps > 0 && mean <= 20.0;
  return {ok ? Verdict::pass : Verdict::fail,
          "mean step " + fmt("%.3f", mean) + " ms, max " + fmt("%.3f", worst) + " ms over " +
              std::to_string(steps) + " steps with >= 1 obstacle row (target 9.8 ms, limit 20 ms)"};
}

Report planner_benchmark() {
  return {Verdict::not_reproducible,
          "motion-planning benchmark success rates need the original planning scenes and "
          "competing planners; covered instead by criteria 5-7 and the property suite"};
}

Report property_suite(const std::string& unit_tests) {
  if (unit_tests.empty()) return {Verdict::fail, "unit test binary not given"};
  const std::string cmd = "\"" + unit_tests + "\" --gtest_brief=1 > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return {rc == 0 ? Verdict::pass : Verdict::fail,
          "unit/property suite " + std::string(rc == 0 ? "green" : "has failures") +
              " (" + unit_tests + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string unit_tests = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* title;
    std::function<Report()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "Jacobian/Hessian finite-difference oracle", jacobian_hessian_oracle},
      {2, "manipulability gradient", manipulability_gradient},
      {3, "QP solver vs active-set enumeration", qp_oracle},
      {4, "distance-Jacobian consistency", distance_jacobian_consistency},
      {5, "experiment 1a: single approaching sphere", experiment_1a},
      {6, "experiments 1b/1c: elbow sphere and moving goal", experiment_1b_1c},
      {7, "ablation: dampers off collides", ablation},
      {8, "controller step timing", timing},
      {9, "planner benchmark success rates", planner_benchmark},
      {10, "property suite", [&] { return property_suite(unit_tests); }},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Report r;
    try {
      r = c.check();
    } catch (const std::exception& e) {
      r = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = r.verdict == Verdict::pass   ? "PASS"
                      : r.verdict == Verdict::fail ? "FAIL"
                                                   : "NOT REPRODUCIBLE";
    if (r.verdict == Verdict::fail) ++failures;
    std::printf("[%s] %d. %s: %s\n", tag, c.id, c.title, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
