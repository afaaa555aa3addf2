#include "neo/sim.hpp"

#include <algorithm>
#include <stdexcept>

#include "neo/kinematics.hpp"

namespace neo {

std::string to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::tracking: return "tracking";
    case TraceStatus::retreating: return "retreating";
    case TraceStatus::stalled: return "stalled";
    case TraceStatus::failed: return "failed";
    case TraceStatus::reached: return "reached";
    case TraceStatus::collided: return "collided";
    case TraceStatus::timeout: return "timeout";
  }
  return "unknown";
}

TraceStatus trace_status_from_string(const std::string& text) {
  for (TraceStatus s : {TraceStatus::tracking, TraceStatus::retreating, TraceStatus::stalled,
                        TraceStatus::failed, TraceStatus::reached, TraceStatus::collided,
                        TraceStatus::timeout}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown status '" + text + "'");
}

std::string to_string(RunResult result) {
  switch (result) {
    case RunResult::reached: return "reached";
    case RunResult::collided: return "collided";
    case RunResult::timeout: return "timeout";
    case RunResult::solver_failed: return "solver_failed";
  }
  return "unknown";
}

Integration integrate(const RobotModel& model, const Eigen::VectorXd& q,
                      const Eigen::VectorXd& qd, double dt) {
  model.check_configuration(q);
  model.check_configuration(qd);
  Integration out;
  out.q = q + qd * dt;
  out.left_limits = (out.q.array() < model.q_min().array()).any() ||
                    (out.q.array() > model.q_max().array()).any();
  return out;
}

std::vector<double> clearances(const RobotModel& model, const Eigen::VectorXd& q,
                               std::span<const Obstacle> obstacles) {
  const ChainState state = chain_state(model, q);
  std::vector<double> out(obstacles.size(), std::numeric_limits<double>::infinity());
  for (size_t o = 0; o < obstacles.size(); ++o) {
    for (const LinkSphere& s : model.link_shapes()) {
      out[o] = std::min(out[o], closest_witness(state, s, obstacles[o]).d);
    }
  }
  return out;
}

namespace {

TraceStatus from_control(ControlStatus s) {
  switch (s) {
    case ControlStatus::tracking: return TraceStatus::tracking;
    case ControlStatus::retreating: return TraceStatus::retreating;
    case ControlStatus::stalled: return TraceStatus::stalled;
    case ControlStatus::failed: return TraceStatus::failed;
  }
  return TraceStatus::failed;
}

}  // namespace

std::vector<StepTrace> run(const Scenario& scenario) {
  scenario.validate();
  const RobotModel& model = scenario.model;
  const int n = model.dof();
  std::vector<StepTrace> trace;
  Eigen::VectorXd q = scenario.q0;

  for (long k = 0;; ++k) {
    StepTrace rec;
    rec.t = static_cast<double>(k) * scenario.dt;
    rec.q = q;
    rec.qd = Eigen::VectorXd::Zero(n);
    const Pose goal = scenario.goal.at(rec.t);
    const std::vector<Obstacle> obstacles = scenario.obstacles_at(rec.t);
    rec.clearance = clearances(model, q, obstacles);
    const Pose ee = end_effector_pose(model, q);
    const Twist err = pose_error_twist(ee, goal);
    rec.position_error = err.v.norm();
    rec.angle_error = err.w.norm();
    rec.manipulability = manipulability(jacobian(model, q));

    const bool collided = std::any_of(rec.clearance.begin(), rec.clearance.end(),
                                      [](double d) { return d < 0.0; });
    const Twist goal_velocity = scenario.goal.velocity(rec.t);
    const bool goal_at_rest = goal_velocity.v.isZero(0.0) && goal_velocity.w.isZero(0.0);
    if (collided) {
      rec.status = TraceStatus::collided;
    } else if (goal_at_rest && at_goal(ee, goal, scenario.params.goal_tolerance)) {
      rec.status = TraceStatus::reached;
    } else if (rec.t >= scenario.max_time - 1e-9 * scenario.dt) {
      rec.status = TraceStatus::timeout;
    } else {
      const ControlStep cmd = step(model, q, goal, obstacles, scenario.params);
      rec.qd = cmd.qd;
      rec.delta = cmd.delta;
      rec.solve_ms = cmd.solve_time * 1e3;
      rec.status = from_control(cmd.status);
      trace.push_back(rec);
      if (cmd.status == ControlStatus::failed) break;
      q = integrate(model, q, cmd.qd, scenario.dt).q;
      continue;
    }
    trace.push_back(std::move(rec));
    break;
  }
  return trace;
}

Outcome summarize(const std::vector<StepTrace>& trace, const RobotModel& model) {
  if (trace.empty()) throw std::invalid_argument("empty trace");
  Outcome out;
  double total = 0.0;
  for (const StepTrace& s : trace) {
    for (double d : s.clearance) out.min_clearance = std::min(out.min_clearance, d);
    if ((s.q.array() < model.q_min().array()).any() ||
        (s.q.array() > model.q_max().array()).any()) {
      out.left_joint_limits = true;
    }
    const bool control = s.status == TraceStatus::tracking ||
                         s.status == TraceStatus::retreating ||
                         s.status == TraceStatus::stalled || s.status == TraceStatus::failed;
    if (control) {
      ++out.steps;
      total += s.solve_ms;
      out.max_solve_ms = std::max(out.max_solve_ms, s.solve_ms);
    }
  }
  if (out.steps > 0) out.mean_solve_ms = total / out.steps;

  const StepTrace& last = trace.back();
  if (out.min_clearance < 0.0) {
    out.result = RunResult::collided;
  } else {
    switch (last.status) {
      case TraceStatus::reached:
        out.result = RunResult::reached;
        out.time_to_goal = last.t;
        break;
      case TraceStatus::failed: out.result = RunResult::solver_failed; break;
      default: out.result = RunResult::timeout; break;
    }
  }
  return out;
}

}  // namespace neo
