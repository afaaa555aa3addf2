#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace neo {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Rigid transform: x_parent = rotation * x_child + translation.
struct Pose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static Pose identity() { return {}; }
  static Pose from_translation(const Eigen::Vector3d& t);
  static Pose from_rotation(const Eigen::Matrix3d& r);
  /// URDF convention: translate by xyz, then R = Rz(yaw) Ry(pitch) Rx(roll).
  static Pose from_xyz_rpy(const Eigen::Vector3d& xyz, const Eigen::Vector3d& rpy);

  Pose operator*(const Pose& other) const;
  Eigen::Vector3d operator*(const Eigen::Vector3d& point) const;
  Pose inverse() const;

  /// Throws std::invalid_argument if the rotation is not in SO(3) within 1e-9.
  void validate() const;
};

/// Spatial velocity ordered (v_x v_y v_z w_x w_y w_z).
struct Twist {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d w = Eigen::Vector3d::Zero();

  static Twist from_vector(const Vector6d& x);
  Vector6d as_vector() const;
  double norm() const { return as_vector().norm(); }
  Twist operator*(double s) const { return {v * s, w * s}; }
};

Eigen::Matrix3d skew(const Eigen::Vector3d& w);
Eigen::Matrix3d rpy_to_rotation(const Eigen::Vector3d& rpy);
Eigen::Vector3d rotation_to_rpy(const Eigen::Matrix3d& r);

/// Rodrigues exponential of a rotation vector.
Eigen::Matrix3d so3_exp(const Eigen::Vector3d& w);

/// Rotation vector (axis * angle, angle in [0, pi]) of r.
///
/// At angle pi the axis is ambiguous up to sign; the returned axis has its
/// largest-magnitude component positive.
Eigen::Vector3d so3_log(const Eigen::Matrix3d& r);

/// Angle of the relative rotation between two orientations, in [0, pi].
double rotation_angle(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

/// Base-frame pose error from `current` to `desired`: v is the translation
/// difference, w is the rotation vector of desired * current^T. Both are
/// expressed in the base frame so the result composes with a base-frame
/// Jacobian.
Twist pose_error_twist(const Pose& current, const Pose& desired);

}  // namespace neo
