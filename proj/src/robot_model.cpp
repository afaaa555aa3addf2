#include "neo/robot_model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace neo {

RobotModel::RobotModel(std::string name, std::vector<JointSpec> joints, Pose base_pose,
                       Pose tool_offset, Eigen::VectorXd q_min, Eigen::VectorXd q_max,
                       Eigen::VectorXd qd_min, Eigen::VectorXd qd_max,
                       std::vector<LinkSphere> link_shapes)
    : name_(std::move(name)),
      joints_(std::move(joints)),
      base_pose_(std::move(base_pose)),
      tool_offset_(std::move(tool_offset)),
      q_min_(std::move(q_min)),
      q_max_(std::move(q_max)),
      qd_min_(std::move(qd_min)),
      qd_max_(std::move(qd_max)),
      link_shapes_(std::move(link_shapes)) {
  const auto n = static_cast<Eigen::Index>(joints_.size());
  if (n < 1) {
    throw std::invalid_argument("robot model needs at least one joint");
  }
  if (q_min_.size() != n || q_max_.size() != n || qd_min_.size() != n || qd_max_.size() != n) {
    throw std::invalid_argument("joint limit vectors must have one entry per joint");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(q_min_(j) < q_max_(j))) {
      throw std::invalid_argument("q_min must be below q_max for joint " + std::to_string(j));
    }
    if (!(qd_min_(j) < 0.0 && 0.0 < qd_max_(j))) {
      throw std::invalid_argument("velocity limits must bracket zero for joint " +
                                  std::to_string(j));
    }
    const auto& joint = joints_[static_cast<size_t>(j)];
    if (std::abs(joint.axis.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("joint axis must be a unit vector for joint " +
                                  std::to_string(j));
    }
    joint.pre_transform.validate();
  }
  base_pose_.validate();
  tool_offset_.validate();
  for (const auto& shape : link_shapes_) {
    if (shape.link < 0 || shape.link >= n) {
      throw std::invalid_argument("collision sphere attached to unknown link " +
                                  std::to_string(shape.link));
    }
    if (!(shape.radius >= 0.0)) {
      throw std::invalid_argument("collision sphere radius must be non-negative");
    }
    shape.offset.validate();
  }
}

void RobotModel::check_configuration(const Eigen::VectorXd& q) const {
  if (q.size() != dof()) {
    throw std::invalid_argument("configuration has " + std::to_string(q.size()) +
                                " entries, model " + name_ + " has " +
                                std::to_string(dof()) + " joints");
  }
}

namespace {

// Modified DH element Rx(alpha) Tx(a) Tz(d) followed by Rz(theta).
JointSpec mdh(double a, double d, double alpha) {
  JointSpec j;
  j.kind = JointKind::revolute;
  j.pre_transform.rotation = Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitX()).toRotationMatrix();
  j.pre_transform.translation = j.pre_transform.rotation * Eigen::Vector3d(a, 0.0, d);
  j.axis = Eigen::Vector3d::UnitZ();
  return j;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

RobotModel make_panda() {
  std::vector<JointSpec> joints = {
      mdh(0.0, 0.333, 0.0),         mdh(0.0, 0.0, -M_PI_2),
      mdh(0.0, 0.316, M_PI_2),      mdh(0.0825, 0.0, M_PI_2),
      mdh(-0.0825, 0.384, -M_PI_2), mdh(0.0, 0.0, M_PI_2),
      mdh(0.088, 0.0, M_PI_2),
  };
  // flange (0.107) + hand rotated -45 deg + fingertip centre (0.1034)
  const Pose tool = Pose::from_xyz_rpy({0.0, 0.0, 0.2104}, {0.0, 0.0, -M_PI_4});

  const Eigen::VectorXd q_max = vec({2.8973, 1.7628, 2.8973, -0.0698, 2.8973, 3.7525, 2.8973});
  const Eigen::VectorXd q_min = vec({-2.8973, -1.7628, -2.8973, -3.0718, -2.8973, -0.0175, -2.8973});
  const Eigen::VectorXd qd_max = vec({2.175, 2.175, 2.175, 2.175, 2.61, 2.61, 2.61});

  auto sphere = [](int link, Eigen::Vector3d xyz, double r) {
    return LinkSphere{link, Pose::from_translation(xyz), r};
  };
  std::vector<LinkSphere> shapes = {
      sphere(1, {0.0, -0.158, 0.0}, 0.07),       // upper arm
      sphere(3, {0.0, 0.0, 0.0}, 0.08),          // elbow
      sphere(3, {-0.04125, 0.192, 0.0}, 0.07),   // forearm
      sphere(4, {0.0, 0.0, 0.0}, 0.07),          // wrist
      sphere(6, {0.0, 0.0, 0.107}, 0.08),        // hand
      LinkSphere{6, tool, 0.04},                 // fingertips
  };

  return RobotModel("panda", std::move(joints), Pose::identity(), tool, q_min, q_max,
                    -qd_max, qd_max, std::move(shapes));
}

Eigen::VectorXd panda_ready_configuration() {
  return vec({0.0, -0.3, 0.0, -2.2, 0.0, 2.0, M_PI_4});
}

RobotModel make_planar_arm(const std::vector<double>& lengths) {
  const auto n = static_cast<Eigen::Index>(lengths.size());
  std::vector<JointSpec> joints;
  joints.reserve(lengths.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    JointSpec j;
    j.kind = JointKind::revolute;
    j.pre_transform = Pose::from_translation(
        {i == 0 ? 0.0 : lengths[static_cast<size_t>(i - 1)], 0.0, 0.0});
    joints.push_back(j);
  }
  const Pose tool = Pose::from_translation({lengths.back(), 0.0, 0.0});
  return RobotModel("planar", std::move(joints), Pose::identity(), tool,
                    Eigen::VectorXd::Constant(n, -M_PI), Eigen::VectorXd::Constant(n, M_PI),
                    Eigen::VectorXd::Constant(n, -2.0), Eigen::VectorXd::Constant(n, 2.0), {});
}

}  // namespace neo
