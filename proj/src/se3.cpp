#include "neo/se3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace neo {

Pose Pose::from_translation(const Eigen::Vector3d& t) {
  Pose p;
  p.translation = t;
  return p;
}

Pose Pose::from_rotation(const Eigen::Matrix3d& r) {
  Pose p;
  p.rotation = r;
  return p;
}

Pose Pose::from_xyz_rpy(const Eigen::Vector3d& xyz, const Eigen::Vector3d& rpy) {
  Pose p;
  p.rotation = rpy_to_rotation(rpy);
  p.translation = xyz;
  return p;
}

Pose Pose::operator*(const Pose& other) const {
  Pose out;
  out.rotation = rotation * other.rotation;
  out.translation = rotation * other.translation + translation;
  return out;
}

Eigen::Vector3d Pose::operator*(const Eigen::Vector3d& point) const {
  return rotation * point + translation;
}

Pose Pose::inverse() const {
  Pose out;
  out.rotation = rotation.transpose();
  out.translation = -(out.rotation * translation);
  return out;
}

void Pose::validate() const {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw std::invalid_argument("pose has non-finite entries");
  }
  const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                           .cwiseAbs()
                           .maxCoeff();
  if (ortho > 1e-9 || std::abs(rotation.determinant() - 1.0) > 1e-9) {
    throw std::invalid_argument("pose rotation is not a proper rotation matrix");
  }
}

Twist Twist::from_vector(const Vector6d& x) { return {x.head<3>(), x.tail<3>()}; }

Vector6d Twist::as_vector() const {
  Vector6d x;
  x << v, w;
  return x;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d s;
  s << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return s;
}

Eigen::Matrix3d rpy_to_rotation(const Eigen::Vector3d& rpy) {
  return (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

Eigen::Vector3d rotation_to_rpy(const Eigen::Matrix3d& r) {
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  if (std::abs(std::cos(pitch)) < 1e-12) {
    // gimbal lock: fold yaw into roll
    return {std::atan2(-r(1, 2), r(1, 1)), pitch, 0.0};
  }
  return {std::atan2(r(2, 1), r(2, 2)), pitch, std::atan2(r(1, 0), r(0, 0))};
}

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  const Eigen::Matrix3d k = skew(w);
  if (theta < 1e-8) {
    return Eigen::Matrix3d::Identity() + k + 0.5 * k * k;
  }
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / (theta * theta);
  return Eigen::Matrix3d::Identity() + a * k + b * k * k;
}

Eigen::Vector3d so3_log(const Eigen::Matrix3d& r) {
  const double cos_theta = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  const Eigen::Vector3d vee(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));

  if (theta < 1e-6) {
    // sin(theta)/theta ~ 1 - theta^2/6
    return 0.5 * (1.0 + theta * theta / 6.0) * vee;
  }
  if (M_PI - theta > 1e-6) {
    return theta / (2.0 * std::sin(theta)) * vee;
  }

  // Near pi: recover the axis from the symmetric part, R + I = 2 a a^T.
  const Eigen::Matrix3d b = 0.5 * (r + Eigen::Matrix3d::Identity());
  int k = 0;
  b.diagonal().maxCoeff(&k);
  Eigen::Vector3d axis = b.col(k) / std::sqrt(std::max(b(k, k), 1e-300));
  // refine with the antisymmetric part when it carries a sign
  if (vee.norm() > 1e-12 && axis.dot(vee) < 0.0) {
    axis = -axis;
  }
  axis.normalize();
  if (vee.norm() <= 1e-12) {
    int big = 0;
    axis.cwiseAbs().maxCoeff(&big);
    if (axis(big) < 0.0) {
      axis = -axis;
    }
  }
  return theta * axis;
}

double rotation_angle(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  return so3_log(b * a.transpose()).norm();
}

Twist pose_error_twist(const Pose& current, const Pose& desired) {
  Twist out;
  out.v = desired.translation - current.translation;
  out.w = so3_log(desired.rotation * current.rotation.transpose());
  return out;
}

}  // namespace neo
