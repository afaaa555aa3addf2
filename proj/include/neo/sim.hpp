#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "neo/controller.hpp"
#include "neo/scenario.hpp"

namespace neo {

enum class TraceStatus { tracking, retreating, stalled, failed, reached, collided, timeout };

std::string to_string(TraceStatus status);
TraceStatus trace_status_from_string(const std::string& text);

struct StepTrace {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::VectorXd qd;
  Vector6d delta = Vector6d::Zero();
  std::vector<double> clearance;  // per obstacle, min over robot spheres
  double manipulability = 0.0;
  double position_error = 0.0;
  double angle_error = 0.0;
  double solve_ms = 0.0;  // wall clock, assemble + solve
  TraceStatus status = TraceStatus::tracking;
};

struct Integration {
  Eigen::VectorXd q;
  bool left_limits = false;  // q outside [q_min, q_max] after the step
};

/// Explicit Euler step q + qd dt.
Integration integrate(const RobotModel& model, const Eigen::VectorXd& q,
                      const Eigen::VectorXd& qd, double dt);

/// Per-obstacle clearance: minimum surface distance over all robot spheres.
std::vector<double> clearances(const RobotModel& model, const Eigen::VectorXd& q,
                               std::span<const Obstacle> obstacles);

/// Closed-loop run at t = k dt. Each sample checks, in order: collision
/// (any clearance < 0), goal reached (within tolerance with the goal at rest),
/// timeout (t >= max_time); otherwise it runs one control step and integrates.
/// The last trace entry carries the terminal status. A failed control step
/// ends the run.
std::vector<StepTrace> run(const Scenario& scenario);

enum class RunResult { reached, collided, timeout, solver_failed };

std::string to_string(RunResult result);

struct Outcome {
  RunResult result = RunResult::timeout;
  std::optional<double> time_to_goal;
  double min_clearance = std::numeric_limits<double>::infinity();
  double mean_solve_ms = 0.0;  // over control steps
  double max_solve_ms = 0.0;
  int steps = 0;                 // control steps taken
  bool left_joint_limits = false;
};

/// Throws std::invalid_argument on an empty trace.
Outcome summarize(const std::vector<StepTrace>& trace, const RobotModel& model);

}  // namespace neo
