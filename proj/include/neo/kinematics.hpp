#pragma once

#include <vector>

#include <Eigen/Core>

#include "neo/robot_model.hpp"
#include "neo/se3.hpp"

namespace neo {

/// 6 x n base-frame geometric Jacobian, rows (v_x v_y v_z w_x w_y w_z).
using Jacobian = Eigen::Matrix<double, 6, Eigen::Dynamic>;

/// Kinematic Hessian: slices[i] = dJ/dq_i, each 6 x n.
using Hessian = std::vector<Jacobian>;

/// Per-joint quantities of one configuration, shared by the Jacobian-type
/// computations below.
struct ChainState {
  std::vector<Pose> link_poses;            // n link frames
  Pose end_effector;                       // link n-1 * tool_offset
  std::vector<Eigen::Vector3d> axes;       // joint axes, base frame
  std::vector<Eigen::Vector3d> origins;    // points on the joint axes, base frame
};

ChainState chain_state(const RobotModel& model, const Eigen::VectorXd& q);

/// Link poses 0..n-1 followed by the end-effector pose (n + 1 entries).
std::vector<Pose> forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q);

Pose end_effector_pose(const RobotModel& model, const Eigen::VectorXd& q);

Jacobian jacobian(const RobotModel& model, const Eigen::VectorXd& q);
Jacobian jacobian(const RobotModel& model, const ChainState& state);

/// Analytic Hessian from cross products of Jacobian columns.
Hessian hessian(const RobotModel& model, const Eigen::VectorXd& q);
Hessian hessian(const RobotModel& model, const Jacobian& j);

/// Translational Jacobian of a point fixed to link `link` at `offset`
/// (offset expressed in the link frame).
///
/// For 0 <= link < n the result has link + 1 columns (joints after the link do
/// not move the point). link == n denotes the end-effector frame and gives n
/// columns. Throws std::out_of_range otherwise.
Eigen::Matrix3Xd point_jacobian(const RobotModel& model, const Eigen::VectorXd& q, int link,
                                const Pose& offset);
Eigen::Matrix3Xd point_jacobian(const RobotModel& model, const ChainState& state, int link,
                                const Pose& offset);

}  // namespace neo
