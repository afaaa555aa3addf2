#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "neo/kinematics.hpp"
#include "neo/robot_model.hpp"

namespace neo {

struct Obstacle {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
};

/// Closest surface points between one robot sphere and one obstacle sphere.
struct DistanceWitness {
  Eigen::Vector3d p_r = Eigen::Vector3d::Zero();   // on the robot sphere, base frame
  Eigen::Vector3d p_o = Eigen::Vector3d::Zero();   // on the obstacle sphere, base frame
  double d = 0.0;                                  // surface-to-surface, negative when overlapping
  Eigen::Vector3d n_or = Eigen::Vector3d::UnitZ(); // unit, robot -> obstacle
  int link = 0;
  Pose shape_offset;                               // p_r in the link frame
  bool coincident = false;                         // centres within 1e-9, n_or defaulted to +z
};

/// One inequality row coeffs . qd <= bound over the n joint velocities.
struct DamperRow {
  Eigen::VectorXd coeffs;
  double bound = 0.0;
};

struct DamperParams {
  double xi = 1.0;    // gain
  double d_i = 0.3;   // influence distance, m
  double d_s = 0.05;  // stopping distance, m
};

DistanceWitness closest_witness(const RobotModel& model, const Eigen::VectorXd& q,
                                const LinkSphere& shape, const Obstacle& obstacle);
DistanceWitness closest_witness(const ChainState& state, const LinkSphere& shape,
                                const Obstacle& obstacle);

/// Row J_d with d_dot = J_d . qd + n_or . p_o_dot; entries past the witness
/// link are zero.
Eigen::VectorXd distance_jacobian(const RobotModel& model, const Eigen::VectorXd& q,
                                  const DistanceWitness& witness);
Eigen::VectorXd distance_jacobian(const RobotModel& model, const ChainState& state,
                                  const DistanceWitness& witness);

/// Velocity damper on the approach rate:
///   -d_dot <= xi (d - d_s) / (d_i - d_s)
/// written over qd as coeffs = -J_d, bound = xi (d - d_s)/(d_i - d_s) + n_or . p_o_dot.
/// Throws std::invalid_argument if d_i <= d_s.
DamperRow damper_row(const DistanceWitness& witness, const Eigen::VectorXd& j_d,
                     const DamperParams& params, const Eigen::Vector3d& obstacle_velocity);

/// Witness of one (robot sphere, obstacle) pair.
struct PairWitness {
  int shape = 0;
  int obstacle = 0;
  DistanceWitness witness;
};

/// All sphere/obstacle pairs ordered by link index, then model sphere order,
/// then obstacle index.
std::vector<PairWitness> pair_witnesses(const RobotModel& model, const ChainState& state,
                                        std::span<const Obstacle> obstacles);

/// Damper rows for every pair with d < d_i, in pair_witnesses order.
///
/// The pair sweep runs as an OpenMP loop once the pair count reaches
/// kParallelPairThreshold; the output order is independent of scheduling.
std::vector<DamperRow> collect_constraints(const RobotModel& model, const Eigen::VectorXd& q,
                                           std::span<const Obstacle> obstacles,
                                           const DamperParams& params);
std::vector<DamperRow> collect_constraints(const RobotModel& model, const ChainState& state,
                                           std::span<const PairWitness> pairs,
                                           std::span<const Obstacle> obstacles,
                                           const DamperParams& params);

/// Single-threaded reference for collect_constraints.
std::vector<DamperRow> collect_constraints_serial(const RobotModel& model,
                                                  const Eigen::VectorXd& q,
                                                  std::span<const Obstacle> obstacles,
                                                  const DamperParams& params);

inline constexpr size_t kParallelPairThreshold = 64;

}  // namespace neo
