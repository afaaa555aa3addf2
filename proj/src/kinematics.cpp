#include "neo/kinematics.hpp"

#include <stdexcept>
#include <string>

namespace neo {

namespace {

Pose joint_motion(const JointSpec& joint, double q) {
  if (joint.kind == JointKind::revolute) {
    return Pose::from_rotation(Eigen::AngleAxisd(q, joint.axis).toRotationMatrix());
  }
  return Pose::from_translation(joint.axis * q);
}

}  // namespace

ChainState chain_state(const RobotModel& model, const Eigen::VectorXd& q) {
  model.check_configuration(q);
  const auto n = static_cast<size_t>(model.dof());
  ChainState s;
  s.link_poses.reserve(n);
  s.axes.reserve(n);
  s.origins.reserve(n);

  Pose frame = model.base_pose();
  for (size_t j = 0; j < n; ++j) {
    const JointSpec& joint = model.joints()[j];
    frame = frame * joint.pre_transform;
    s.axes.push_back(frame.rotation * joint.axis);
    s.origins.push_back(frame.translation);
    frame = frame * joint_motion(joint, q(static_cast<Eigen::Index>(j)));
    s.link_poses.push_back(frame);
  }
  s.end_effector = frame * model.tool_offset();
  return s;
}

std::vector<Pose> forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  ChainState s = chain_state(model, q);
  std::vector<Pose> poses = std::move(s.link_poses);
  poses.push_back(s.end_effector);
  return poses;
}

Pose end_effector_pose(const RobotModel& model, const Eigen::VectorXd& q) {
  return chain_state(model, q).end_effector;
}

namespace {

// Columns 0..columns-1 of the translational Jacobian of base-frame point p.
Eigen::Matrix3Xd translational_columns(const RobotModel& model, const ChainState& s,
                                       const Eigen::Vector3d& p, int columns) {
  Eigen::Matrix3Xd jp(3, columns);
  for (int j = 0; j < columns; ++j) {
    const auto uj = static_cast<size_t>(j);
    if (model.joints()[uj].kind == JointKind::revolute) {
      jp.col(j) = s.axes[uj].cross(p - s.origins[uj]);
    } else {
      jp.col(j) = s.axes[uj];
    }
  }
  return jp;
}

}  // namespace

Jacobian jacobian(const RobotModel& model, const ChainState& s) {
  const int n = model.dof();
  Jacobian j(6, n);
  j.topRows<3>() = translational_columns(model, s, s.end_effector.translation, n);
  for (int c = 0; c < n; ++c) {
    const auto uc = static_cast<size_t>(c);
    if (model.joints()[uc].kind == JointKind::revolute) {
      j.block<3, 1>(3, c) = s.axes[uc];
    } else {
      j.block<3, 1>(3, c).setZero();
    }
  }
  return j;
}

Jacobian jacobian(const RobotModel& model, const Eigen::VectorXd& q) {
  return jacobian(model, chain_state(model, q));
}

Hessian hessian(const RobotModel& model, const Jacobian& jac) {
  const int n = model.dof();
  Hessian h(static_cast<size_t>(n), Jacobian::Zero(6, n));
  for (int j = 0; j < n; ++j) {
    const Eigen::Vector3d jv = jac.block<3, 1>(0, j);
    const Eigen::Vector3d jw = jac.block<3, 1>(3, j);
    for (int i = 0; i <= j; ++i) {
      const Eigen::Vector3d wi = jac.block<3, 1>(3, i);
      // d(column j)/dq_i for i <= j: the rotation of joint i carries column j
      h[static_cast<size_t>(i)].block<3, 1>(0, j) = wi.cross(jv);
      h[static_cast<size_t>(i)].block<3, 1>(3, j) = wi.cross(jw);
      if (i != j) {
        // d(column i)/dq_j for j > i: only the end-effector point moves
        h[static_cast<size_t>(j)].block<3, 1>(0, i) = wi.cross(jv);
      }
    }
  }
  return h;
}

Hessian hessian(const RobotModel& model, const Eigen::VectorXd& q) {
  return hessian(model, jacobian(model, q));
}

Eigen::Matrix3Xd point_jacobian(const RobotModel& model, const ChainState& s, int link,
                                const Pose& offset) {
  const int n = model.dof();
  if (link < 0 || link > n) {
    throw std::out_of_range("point_jacobian: link " + std::to_string(link) +
                            " outside [0, " + std::to_string(n) + "]");
  }
  const Pose& frame = link == n ? s.end_effector : s.link_poses[static_cast<size_t>(link)];
  const Eigen::Vector3d p = frame * offset.translation;
  return translational_columns(model, s, p, link == n ? n : link + 1);
}

Eigen::Matrix3Xd point_jacobian(const RobotModel& model, const Eigen::VectorXd& q, int link,
                                const Pose& offset) {
  return point_jacobian(model, chain_state(model, q), link, offset);
}

}  // namespace neo
