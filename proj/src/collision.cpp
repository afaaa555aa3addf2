#include "neo/collision.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace neo {

DistanceWitness closest_witness(const ChainState& state, const LinkSphere& shape,
                                const Obstacle& obstacle) {
  const Pose& link_pose = state.link_poses.at(static_cast<size_t>(shape.link));
  const Eigen::Vector3d c_r = link_pose * shape.offset.translation;
  const Eigen::Vector3d diff = obstacle.center - c_r;
  const double dist = diff.norm();

  DistanceWitness w;
  w.link = shape.link;
  if (dist < 1e-9) {
    w.coincident = true;
    w.n_or = Eigen::Vector3d::UnitZ();
    w.d = -(shape.radius + obstacle.radius);
  } else {
    w.n_or = diff / dist;
    w.d = dist - shape.radius - obstacle.radius;
  }
  w.p_r = c_r + shape.radius * w.n_or;
  w.p_o = obstacle.center - obstacle.radius * w.n_or;
  w.shape_offset = Pose::from_translation(link_pose.inverse() * w.p_r);
  return w;
}

DistanceWitness closest_witness(const RobotModel& model, const Eigen::VectorXd& q,
                                const LinkSphere& shape, const Obstacle& obstacle) {
  return closest_witness(chain_state(model, q), shape, obstacle);
}

Eigen::VectorXd distance_jacobian(const RobotModel& model, const ChainState& state,
                                  const DistanceWitness& witness) {
  const Eigen::Matrix3Xd jp = point_jacobian(model, state, witness.link, witness.shape_offset);
  Eigen::VectorXd jd = Eigen::VectorXd::Zero(model.dof());
  // n_ro = -n_or
  jd.head(jp.cols()) = -(witness.n_or.transpose() * jp).transpose();
  return jd;
}

Eigen::VectorXd distance_jacobian(const RobotModel& model, const Eigen::VectorXd& q,
                                  const DistanceWitness& witness) {
  return distance_jacobian(model, chain_state(model, q), witness);
}

DamperRow damper_row(const DistanceWitness& witness, const Eigen::VectorXd& j_d,
                     const DamperParams& params, const Eigen::Vector3d& obstacle_velocity) {
  if (!(params.d_i > params.d_s)) {
    throw std::invalid_argument("damper influence distance must exceed the stopping distance");
  }
  DamperRow row;
  row.coeffs = -j_d;
  row.bound = params.xi * (witness.d - params.d_s) / (params.d_i - params.d_s) +
              witness.n_or.dot(obstacle_velocity);
  return row;
}

std::vector<PairWitness> pair_witnesses(const RobotModel& model, const ChainState& state,
                                        std::span<const Obstacle> obstacles) {
  const auto& shapes = model.link_shapes();
  std::vector<int> order(shapes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return shapes[static_cast<size_t>(a)].link < shapes[static_cast<size_t>(b)].link;
  });

  std::vector<PairWitness> pairs;
  pairs.reserve(shapes.size() * obstacles.size());
  for (int s : order) {
    for (size_t o = 0; o < obstacles.size(); ++o) {
      pairs.push_back({s, static_cast<int>(o),
                       closest_witness(state, shapes[static_cast<size_t>(s)], obstacles[o])});
    }
  }
  return pairs;
}

std::vector<DamperRow> collect_constraints(const RobotModel& model, const ChainState& state,
                                           std::span<const PairWitness> pairs,
                                           std::span<const Obstacle> obstacles,
                                           const DamperParams& params) {
  if (!(params.d_i > params.d_s)) {
    throw std::invalid_argument("damper influence distance must exceed the stopping distance");
  }
  const auto count = static_cast<std::ptrdiff_t>(pairs.size());
  std::vector<std::optional<DamperRow>> slots(pairs.size());

#pragma omp parallel for schedule(static) if (pairs.size() >= kParallelPairThreshold)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const PairWitness& pw = pairs[static_cast<size_t>(i)];
    if (pw.witness.d < params.d_i) {
      const Eigen::VectorXd jd = distance_jacobian(model, state, pw.witness);
      slots[static_cast<size_t>(i)] =
          damper_row(pw.witness, jd, params, obstacles[static_cast<size_t>(pw.obstacle)].velocity);
    }
  }

  std::vector<DamperRow> rows;
  for (auto& slot : slots) {
    if (slot) rows.push_back(std::move(*slot));
  }
  return rows;
}

std::vector<DamperRow> collect_constraints(const RobotModel& model, const Eigen::VectorXd& q,
                                           std::span<const Obstacle> obstacles,
                                           const DamperParams& params) {
  const ChainState state = chain_state(model, q);
  const auto pairs = pair_witnesses(model, state, obstacles);
  return collect_constraints(model, state, pairs, obstacles, params);
}

std::vector<DamperRow> collect_constraints_serial(const RobotModel& model,
                                                  const Eigen::VectorXd& q,
                                                  std::span<const Obstacle> obstacles,
                                                  const DamperParams& params) {
  if (!(params.d_i > params.d_s)) {
    throw std::invalid_argument("damper influence distance must exceed the stopping distance");
  }
  const ChainState state = chain_state(model, q);
  const auto& shapes = model.link_shapes();
  std::vector<DamperRow> rows;
  for (int link = 0; link < model.dof(); ++link) {
    for (const LinkSphere& shape : shapes) {
      if (shape.link != link) continue;
      for (const Obstacle& obstacle : obstacles) {
        const DistanceWitness w = closest_witness(state, shape, obstacle);
        if (w.d < params.d_i) {
          rows.push_back(damper_row(w, distance_jacobian(model, state, w), params,
                                    obstacle.velocity));
        }
      }
    }
  }
  return rows;
}

}  // namespace neo
