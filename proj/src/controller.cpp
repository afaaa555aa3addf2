#include "neo/controller.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include "neo/manipulability.hpp"
#include "neo/qp_io.hpp"

namespace neo {

void ControllerParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(beta > 0.0, "beta must be positive");
  require(lambda_q > 0.0, "lambda_q must be positive");
  require(xi >= 0.0, "xi must be non-negative (0 disables obstacle avoidance)");
  require(eta > 0.0, "eta must be positive");
  require(d_s >= 0.0 && d_i > d_s, "need d_i > d_s >= 0");
  require(rho_s >= 0.0 && rho_i > rho_s, "need rho_i > rho_s >= 0");
  require((slack_bound.array() > 0.0).all(), "slack_bound must be positive");
  require(goal_tolerance.position > 0.0 && goal_tolerance.angle > 0.0,
          "goal tolerances must be positive");
  require(retreat_gain >= 0.0, "retreat_gain must be non-negative");
  require(singular_threshold >= 0.0, "singular_threshold must be non-negative");
  require(qp.tolerance > 0.0 && qp.max_iterations > 0, "invalid QP settings");
  if (const auto* fixed = std::get_if<FixedSlackGain>(&lambda_delta)) {
    require(fixed->value > 0.0, "lambda_delta must be positive");
  } else {
    require(std::get<InverseErrorSlackGain>(lambda_delta).epsilon > 0.0,
            "lambda_delta.epsilon must be positive");
  }
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || !std::isfinite(x)) {
    throw std::invalid_argument("parameter " + key + ": cannot parse '" + value + "' as a number");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw std::invalid_argument("parameter " + key + ": expected true/false, got '" + value + "'");
}

}  // namespace

void set_param(ControllerParams& p, const std::string& key, const std::string& value) {
  auto num = [&] { return parse_number(key, value); };
  if (key == "beta") p.beta = num();
  else if (key == "lambda_q") p.lambda_q = num();
  else if (key == "lambda_delta") {
    if (value == "inverse_error") p.lambda_delta = InverseErrorSlackGain{};
    else p.lambda_delta = FixedSlackGain{num()};
  } else if (key == "lambda_delta.epsilon") p.lambda_delta = InverseErrorSlackGain{num()};
  else if (key == "xi") p.xi = num();
  else if (key == "eta") p.eta = num();
  else if (key == "d_i") p.d_i = num();
  else if (key == "d_s") p.d_s = num();
  else if (key == "rho_i") p.rho_i = num();
  else if (key == "rho_s") p.rho_s = num();
  else if (key == "slack_bound") p.slack_bound.setConstant(num());
  else if (key == "goal_tolerance.position") p.goal_tolerance.position = num();
  else if (key == "goal_tolerance.angle") p.goal_tolerance.angle = num();
  else if (key == "retreat_gain") p.retreat_gain = num();
  else if (key == "manipulability") p.manipulability = parse_bool(key, value);
  else if (key == "singular_threshold") p.singular_threshold = num();
  else if (key == "qp.tolerance") p.qp.tolerance = num();
  else if (key == "qp.max_iterations") p.qp.max_iterations = static_cast<int>(num());
  else throw std::invalid_argument("unknown parameter '" + key + "'");
}

Twist desired_velocity(const Pose& current, const Pose& goal, double beta) {
  return pose_error_twist(current, goal) * beta;
}

double lambda_delta(double pose_error_norm, const SlackGainMode& mode) {
  if (const auto* fixed = std::get_if<FixedSlackGain>(&mode)) {
    return fixed->value;
  }
  const double eps = std::get<InverseErrorSlackGain>(mode).epsilon;
  return 1.0 / std::max(pose_error_norm, eps);
}

std::vector<DamperRow> joint_limit_rows(const Eigen::VectorXd& q, const RobotModel& model,
                                        const ControllerParams& params) {
  model.check_configuration(q);
  const int n = model.dof();
  std::vector<DamperRow> rows;
  for (int j = 0; j < n; ++j) {
    const double to_lower = q(j) - model.q_min()(j);
    const double to_upper = model.q_max()(j) - q(j);
    const double rho = std::min(to_lower, to_upper);
    if (rho >= params.rho_i) continue;
    DamperRow row;
    row.coeffs = Eigen::VectorXd::Zero(n);
    row.coeffs(j) = to_upper <= to_lower ? 1.0 : -1.0;
    row.bound = params.eta * (rho - params.rho_s) / (params.rho_i - params.rho_s);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// Closest distance from point c to the segment [a, b].
double segment_point_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                              const Eigen::Vector3d& c) {
  const Eigen::Vector3d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((c - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - c).norm();
}

}  // namespace

RetreatDecision retreat_trigger(const Eigen::Vector3d& ee_position,
                                const Eigen::Vector3d& goal_position,
                                const DistanceWitness& closest, const Obstacle& obstacle,
                                const Eigen::Vector3d& base_origin,
                                const ControllerParams& params, const Twist& nu) {
  RetreatDecision out{false, nu};
  if (!(closest.d < params.d_i)) return out;
  if (segment_point_distance(ee_position, goal_position, obstacle.center) > obstacle.radius) {
    return out;
  }
  out.triggered = true;
  Eigen::Vector2d toward_base = (base_origin - ee_position).head<2>();
  const double norm = toward_base.norm();
  // directly above the base there is no horizontal retreat direction
  toward_base = norm > 1e-9 ? Eigen::Vector2d(toward_base / norm) : Eigen::Vector2d::Zero();
  out.nu.v.head<2>() = params.retreat_gain * toward_base;
  return out;
}

Assembly assemble(const RobotModel& model, const Eigen::VectorXd& q, const Pose& goal,
                  std::span<const Obstacle> obstacles, const ControllerParams& params) {
  params.validate();
  const ChainState state = chain_state(model, q);
  const int n = model.dof();
  const Jacobian j = jacobian(model, state);

  Assembly out;
  AssemblyInfo& info = out.info;
  info.end_effector = state.end_effector;
  info.manipulability = manipulability(j);

  Eigen::VectorXd jm = Eigen::VectorXd::Zero(n);
  if (params.manipulability) {
    const Hessian h = hessian(model, j);
    const std::vector<Eigen::MatrixXd> slices(h.begin(), h.end());
    try {
      jm = manipulability_jacobian(j, slices, info.manipulability, params.singular_threshold);
    } catch (const SingularityError&) {
      info.singular = true;
      jm.setZero();
    }
  }
  info.jm_norm = jm.norm();

  info.pose_error = pose_error_twist(state.end_effector, goal);
  info.nu = info.pose_error * params.beta;
  info.lambda_delta = lambda_delta(info.pose_error.norm(), params.lambda_delta);

  const std::vector<PairWitness> pairs = pair_witnesses(model, state, obstacles);
  for (const PairWitness& pw : pairs) {
    if (!info.closest || pw.witness.d < info.closest->witness.d) info.closest = pw;
  }
  std::vector<DamperRow> obstacle_rows;
  if (params.obstacle_avoidance()) {
    obstacle_rows = collect_constraints(model, state, pairs, obstacles, params.dampers());
  }
  const std::vector<DamperRow> limit_rows = joint_limit_rows(q, model, params);
  info.obstacle_rows = static_cast<int>(obstacle_rows.size());
  info.joint_limit_rows = static_cast<int>(limit_rows.size());

  const int m = n + 6;
  QPProblem& p = out.problem;
  p.Q = Eigen::MatrixXd::Zero(m, m);
  p.Q.topLeftCorner(n, n).diagonal().setConstant(params.lambda_q);
  p.Q.bottomRightCorner(6, 6).diagonal().setConstant(info.lambda_delta);

  p.c = Eigen::VectorXd::Zero(m);
  p.c.head(n) = -jm;

  p.A_eq.resize(6, m);
  p.A_eq << j, Eigen::Matrix<double, 6, 6>::Identity();
  p.b_eq = info.nu.as_vector();

  const auto rows = static_cast<Eigen::Index>(obstacle_rows.size() + limit_rows.size());
  p.A_in = Eigen::MatrixXd::Zero(rows, m);
  p.b_in.resize(rows);
  Eigen::Index r = 0;
  const std::vector<DamperRow>* groups[] = {&obstacle_rows, &limit_rows};
  for (const std::vector<DamperRow>* group : groups) {
    for (const DamperRow& row : *group) {
      p.A_in.row(r).head(n) = row.coeffs.transpose();
      p.b_in(r) = row.bound;
      ++r;
    }
  }

  p.lower.resize(m);
  p.upper.resize(m);
  p.lower << model.qd_min(), -params.slack_bound;
  p.upper << model.qd_max(), params.slack_bound;
  return out;
}

std::string to_string(ControlStatus status) {
  switch (status) {
    case ControlStatus::tracking: return "tracking";
    case ControlStatus::retreating: return "retreating";
    case ControlStatus::stalled: return "stalled";
    case ControlStatus::failed: return "failed";
  }
  return "unknown";
}

bool at_goal(const Pose& current, const Pose& goal, const GoalTolerance& tolerance) {
  return (goal.translation - current.translation).norm() < tolerance.position &&
         rotation_angle(current.rotation, goal.rotation) < tolerance.angle;
}

namespace {

void dump_failed_problem(const QPProblem& problem) {
  const char* dir = std::getenv("NEO_QP_DUMP_DIR");
  if (dir == nullptr || *dir == '\0') return;
  static std::atomic<int> counter{0};
  const auto path = std::filesystem::path(dir) /
                    ("qp_failure_" + std::to_string(counter.fetch_add(1)) + ".json");
  try {
    write_qp_file(path.string(), problem);
  } catch (const std::exception&) {
    // debug aid only
  }
}

}  // namespace

ControlStep step(const RobotModel& model, const Eigen::VectorXd& q, const Pose& goal,
                 std::span<const Obstacle> obstacles, const ControllerParams& params) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const int n = model.dof();

  Assembly assembly = assemble(model, q, goal, obstacles, params);
  const AssemblyInfo& info = assembly.info;

  bool retreating = false;
  if (params.obstacle_avoidance() && info.closest) {
    const RetreatDecision decision = retreat_trigger(
        info.end_effector.translation, goal.translation, info.closest->witness,
        obstacles[static_cast<size_t>(info.closest->obstacle)],
        model.base_pose().translation, params, info.nu);
    if (decision.triggered) {
      retreating = true;
      assembly.problem.b_eq = decision.nu.as_vector();
    }
  }

  const QPSolution sol = solve(assembly.problem, params.qp);
  const auto stop = clock::now();

  ControlStep out;
  out.solve_time = std::chrono::duration<double>(stop - start).count();
  StepDiagnostics& diag = out.diagnostics;
  diag.manipulability = info.manipulability;
  diag.jm_norm = info.jm_norm;
  diag.singular = info.singular;
  diag.active_constraints = info.obstacle_rows + info.joint_limit_rows;
  diag.min_clearance = info.closest ? info.closest->witness.d
                                    : std::numeric_limits<double>::infinity();
  diag.position_error = info.pose_error.v.norm();
  diag.angle_error = info.pose_error.w.norm();
  diag.qp_status = sol.status;
  diag.qp_iterations = sol.iterations;
  diag.kkt_residual = sol.kkt_residual;

  if (sol.status != QPStatus::optimal) {
    dump_failed_problem(assembly.problem);
    out.qd = Eigen::VectorXd::Zero(n);
    out.status = ControlStatus::failed;
    return out;
  }
  out.qd = sol.x.head(n);
  out.delta = sol.x.tail<6>();
  out.status = retreating ? ControlStatus::retreating : ControlStatus::tracking;
  if (out.qd.norm() < 1e-4 && !at_goal(info.end_effector, goal, params.goal_tolerance)) {
    out.status = ControlStatus::stalled;
  }
  return out;
}

}  // namespace neo
