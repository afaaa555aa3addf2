// Serial vs OpenMP constraint collection, and full control-step timing.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "neo/collision.hpp"
#include "neo/controller.hpp"
#include "neo/kinematics.hpp"

namespace {

std::vector<neo::Obstacle> dense_scene(int count, const Eigen::Vector3d& around) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.35, 0.35);
  std::vector<neo::Obstacle> out;
  for (int i = 0; i < count; ++i) {
    out.push_back({around + Eigen::Vector3d(u(rng), u(rng), u(rng)), 0.03,
                   Eigen::Vector3d(u(rng), u(rng), u(rng))});
  }
  return out;
}

void BM_CollectSerial(benchmark::State& state) {
  const neo::RobotModel m = neo::make_panda();
  const Eigen::VectorXd q = neo::panda_ready_configuration();
  const auto obstacles =
      dense_scene(static_cast<int>(state.range(0)), neo::end_effector_pose(m, q).translation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(neo::collect_constraints_serial(m, q, obstacles, {}));
  }
  state.counters["pairs"] = static_cast<double>(obstacles.size() * m.link_shapes().size());
}

void BM_CollectParallel(benchmark::State& state) {
  const neo::RobotModel m = neo::make_panda();
  const Eigen::VectorXd q = neo::panda_ready_configuration();
  const auto obstacles =
      dense_scene(static_cast<int>(state.range(0)), neo::end_effector_pose(m, q).translation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(neo::collect_constraints(m, q, obstacles, {}));
  }
  state.counters["pairs"] = static_cast<double>(obstacles.size() * m.link_shapes().size());
}

void BM_ControlStep(benchmark::State& state) {
  const neo::RobotModel m = neo::make_panda();
  const Eigen::VectorXd q = neo::panda_ready_configuration();
  const neo::Pose start = neo::end_effector_pose(m, q);
  const neo::Pose goal = start * neo::Pose::from_translation({0.1, 0.2, 0.2});
  const auto obstacles = dense_scene(static_cast<int>(state.range(0)), start.translation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(neo::step(m, q, goal, obstacles, {}));
  }
}

}  // namespace

BENCHMARK(BM_CollectSerial)->Arg(2)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_CollectParallel)->Arg(2)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_ControlStep)->Arg(0)->Arg(2)->Arg(16);

BENCHMARK_MAIN();
