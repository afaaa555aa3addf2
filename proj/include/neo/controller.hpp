#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "neo/collision.hpp"
#include "neo/kinematics.hpp"
#include "neo/manipulability.hpp"
#include "neo/qp.hpp"
#include "neo/robot_model.hpp"
#include "neo/se3.hpp"

namespace neo {

struct FixedSlackGain {
  double value = 1.0;
};

/// lambda_delta = 1 / max(e, epsilon), e the pose-error twist norm.
struct InverseErrorSlackGain {
  double epsilon = 1e-3;
};

using SlackGainMode = std::variant<FixedSlackGain, InverseErrorSlackGain>;

struct GoalTolerance {
  double position = 0.01;  // m
  double angle = 0.02;     // rad
};

struct ControllerParams {
  double beta = 1.0;
  double lambda_q = 0.01;
  SlackGainMode lambda_delta = InverseErrorSlackGain{};
  double xi = 1.0;             // 0 disables obstacle rows and the retreat bias
  double eta = 1.0;
  double d_i = 0.3;
  double d_s = 0.05;
  double rho_i = 50.0 * M_PI / 180.0;
  double rho_s = 2.0 * M_PI / 180.0;
  Vector6d slack_bound = Vector6d::Constant(1e3);
  GoalTolerance goal_tolerance;
  double retreat_gain = 0.2;   // m/s
  bool manipulability = true;  // linear -J_m cost on qd
  double singular_threshold = kDefaultSingularThreshold;
  QPSettings qp;

  bool obstacle_avoidance() const { return xi > 0.0; }
  DamperParams dampers() const { return {xi, d_i, d_s}; }

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

/// Sets one parameter from a flat key, e.g. "xi", "lambda_delta" (a number
/// selects fixed mode), "lambda_delta.epsilon", "goal_tolerance.position",
/// "slack_bound" (all six components). Angles rho_i / rho_s are radians.
/// Throws std::invalid_argument for unknown keys or unparsable values.
void set_param(ControllerParams& params, const std::string& key, const std::string& value);

Twist desired_velocity(const Pose& current, const Pose& goal, double beta);

double lambda_delta(double pose_error_norm, const SlackGainMode& mode);

/// One row per joint within rho_i of its nearer limit, bounding motion toward
/// that limit: +qd_j <= eta (rho - rho_s)/(rho_i - rho_s) near the upper
/// limit, -qd_j <= ... near the lower one.
std::vector<DamperRow> joint_limit_rows(const Eigen::VectorXd& q, const RobotModel& model,
                                        const ControllerParams& params);

struct RetreatDecision {
  bool triggered = false;
  Twist nu;
};

/// Replaces v_x, v_y of nu with retreat_gain towards the base origin
/// (horizontal) when the closest obstacle sphere blocks the segment from the
/// end effector to the goal and is within d_i.
RetreatDecision retreat_trigger(const Eigen::Vector3d& ee_position,
                                const Eigen::Vector3d& goal_position,
                                const DistanceWitness& closest, const Obstacle& obstacle,
                                const Eigen::Vector3d& base_origin,
                                const ControllerParams& params, const Twist& nu);

struct AssemblyInfo {
  double manipulability = 0.0;
  double jm_norm = 0.0;
  bool singular = false;         // manipulability term dropped this step
  int obstacle_rows = 0;
  int joint_limit_rows = 0;
  double lambda_delta = 0.0;
  Pose end_effector;
  Twist pose_error;
  Twist nu;
  std::optional<PairWitness> closest;  // global minimum-distance pair
};

struct Assembly {
  QPProblem problem;  // x = (qd, delta), n + 6 variables
  AssemblyInfo info;
};

/// Builds the slack-augmented QP for one control step.
Assembly assemble(const RobotModel& model, const Eigen::VectorXd& q, const Pose& goal,
                  std::span<const Obstacle> obstacles, const ControllerParams& params);

enum class ControlStatus { tracking, retreating, stalled, failed };

std::string to_string(ControlStatus status);

struct StepDiagnostics {
  double manipulability = 0.0;
  double jm_norm = 0.0;
  bool singular = false;
  int active_constraints = 0;
  double min_clearance = std::numeric_limits<double>::infinity();
  double position_error = 0.0;
  double angle_error = 0.0;
  QPStatus qp_status = QPStatus::optimal;
  int qp_iterations = 0;
  double kkt_residual = 0.0;
};

struct ControlStep {
  Eigen::VectorXd qd;
  Vector6d delta = Vector6d::Zero();
  ControlStatus status = ControlStatus::tracking;
  double solve_time = 0.0;  // s, assemble + solve
  StepDiagnostics diagnostics;
};

/// One NEO control step. On a non-optimal QP the commanded velocity is zero
/// and the status is failed. When NEO_QP_DUMP_DIR is set, failing problems
/// are written there as JSON.
ControlStep step(const RobotModel& model, const Eigen::VectorXd& q, const Pose& goal,
                 std::span<const Obstacle> obstacles, const ControllerParams& params);

bool at_goal(const Pose& current, const Pose& goal, const GoalTolerance& tolerance);

}  // namespace neo
