#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "neo/se3.hpp"

namespace neo {

enum class JointKind { revolute, prismatic };

/// One ETS-style element: a fixed transform followed by a joint about/along
/// `axis` (expressed in the frame after `pre_transform`).
struct JointSpec {
  JointKind kind = JointKind::revolute;
  Pose pre_transform;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

/// Collision sphere rigidly attached to link `link`.
struct LinkSphere {
  int link = 0;
  Pose offset;
  double radius = 0.0;
};

/// Serial chain. Link k is the frame reached after joint k moves; the
/// end-effector frame is link n-1 composed with `tool_offset`.
class RobotModel {
 public:
  RobotModel(std::string name, std::vector<JointSpec> joints, Pose base_pose,
             Pose tool_offset, Eigen::VectorXd q_min, Eigen::VectorXd q_max,
             Eigen::VectorXd qd_min, Eigen::VectorXd qd_max,
             std::vector<LinkSphere> link_shapes);

  int dof() const { return static_cast<int>(joints_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<JointSpec>& joints() const { return joints_; }
  const Pose& base_pose() const { return base_pose_; }
  const Pose& tool_offset() const { return tool_offset_; }
  const Eigen::VectorXd& q_min() const { return q_min_; }
  const Eigen::VectorXd& q_max() const { return q_max_; }
  const Eigen::VectorXd& qd_min() const { return qd_min_; }
  const Eigen::VectorXd& qd_max() const { return qd_max_; }
  const std::vector<LinkSphere>& link_shapes() const { return link_shapes_; }

  /// Throws std::invalid_argument unless q has dof() entries.
  void check_configuration(const Eigen::VectorXd& q) const;

 private:
  std::string name_;
  std::vector<JointSpec> joints_;
  Pose base_pose_;
  Pose tool_offset_;
  Eigen::VectorXd q_min_, q_max_, qd_min_, qd_max_;
  std::vector<LinkSphere> link_shapes_;
};

/// Franka Emika Panda from the manufacturer's modified-DH table, with a
/// hand-placed set of collision spheres. Sphere 1 sits on the elbow (link 3).
RobotModel make_panda();

/// Panda "ready" configuration.
Eigen::VectorXd panda_ready_configuration();

/// Planar arm in the xy-plane with revolute joints about z and the given link
/// lengths; the tool sits at the tip of the last link.
RobotModel make_planar_arm(const std::vector<double>& lengths);

}  // namespace neo
