#pragma once

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "neo/collision.hpp"
#include "neo/controller.hpp"
#include "neo/robot_model.hpp"
#include "neo/se3.hpp"

namespace neo {

/// Constant base-frame twist applied to the goal over [start, start + duration).
struct GoalSegment {
  double start = 0.0;
  double duration = 0.0;
  Twist twist;
};

struct GoalTrajectory {
  Pose initial;
  std::vector<GoalSegment> segments;  // sorted, non-overlapping

  Pose at(double t) const;
  Twist velocity(double t) const;
};

struct MotionSegment {
  double start = 0.0;
  double duration = std::numeric_limits<double>::infinity();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
};

/// Sphere obstacle moving with piecewise-constant velocity (at rest outside
/// its segments).
struct ObstacleTrack {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
  std::vector<MotionSegment> segments;

  Obstacle at(double t) const;
};

struct Scenario {
  explicit Scenario(RobotModel m) : model(std::move(m)) {}

  std::string name = "scenario";
  std::string model_ref = "panda";
  RobotModel model;
  Eigen::VectorXd q0;
  GoalTrajectory goal;
  std::vector<ObstacleTrack> obstacles;
  double dt = 0.02;
  double max_time = 15.0;
  ControllerParams params;

  std::vector<Obstacle> obstacles_at(double t) const;

  /// Throws std::invalid_argument on dt <= 0, max_time < dt, overlapping goal
  /// segments, a q0 of the wrong size or invalid params.
  void validate() const;
};

/// Scenario file (JSON). Relative robot model paths resolve against the
/// scenario's directory.
///
///   {
///     "name": "exp1a",
///     "robot": "panda" | "<model file>",
///     "q0": [...] | "ready",
///     "dt": 0.02, "max_time": 15,
///     "goal": {
///       "pose": {"xyz": [...], "rpy": [...]}             absolute, or
///       "offset": {"xyz": [...], "rpy": [...]},          from the start pose:
///                                                         p += xyz, R = R(rpy) R
///       "segments": [{"start": s, "duration": s, "v": [...], "w": [...]}]
///     },
///     "obstacles": [{
///       "center": [...], "radius": r,
///       "velocity": [...]                                 constant, or
///       "speed": v, "aim": {"point": [...]} | {"link": k} | {"end_effector": true}
///                                                         heading fixed at t = 0,
///       "duration": s                                     optional, for the two above; or
///       "segments": [{"start": s, "duration": s, "velocity": [...]}]
///     }],
///     "params": {"xi": 1, "lambda_delta": "inverse_error", ...}   set_param keys
///   }
///
/// Throws ParseError naming the offending field.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& source = "<string>",
                        const std::string& base_dir = ".");

}  // namespace neo
