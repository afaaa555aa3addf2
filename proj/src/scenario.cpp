#include "neo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "json_fields.hpp"
#include "neo/kinematics.hpp"
#include "neo/model_io.hpp"

namespace neo {

namespace {

double elapsed_in(double t, double start, double duration) {
  return std::clamp(t - start, 0.0, duration);
}

bool active_at(double t, double start, double duration) {
  return t >= start && t - start < duration;
}

}  // namespace

Pose GoalTrajectory::at(double t) const {
  Pose p = initial;
  for (const GoalSegment& s : segments) {
    const double tau = elapsed_in(t, s.start, s.duration);
    if (tau <= 0.0) continue;
    p.translation += s.twist.v * tau;
    p.rotation = so3_exp(s.twist.w * tau) * p.rotation;
  }
  return p;
}

Twist GoalTrajectory::velocity(double t) const {
  for (const GoalSegment& s : segments) {
    if (active_at(t, s.start, s.duration)) return s.twist;
  }
  return {};
}

Obstacle ObstacleTrack::at(double t) const {
  Obstacle o;
  o.center = center;
  o.radius = radius;
  for (const MotionSegment& s : segments) {
    const double tau = elapsed_in(t, s.start, s.duration);
    if (tau > 0.0) o.center += s.velocity * tau;
    if (active_at(t, s.start, s.duration)) o.velocity = s.velocity;
  }
  return o;
}

std::vector<Obstacle> Scenario::obstacles_at(double t) const {
  std::vector<Obstacle> out;
  out.reserve(obstacles.size());
  for (const ObstacleTrack& track : obstacles) out.push_back(track.at(t));
  return out;
}

void Scenario::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(max_time >= dt)) throw std::invalid_argument("max_time must be at least dt");
  model.check_configuration(q0);
  params.validate();
  goal.initial.validate();
  double end = -std::numeric_limits<double>::infinity();
  for (const GoalSegment& s : goal.segments) {
    if (!(s.duration >= 0.0)) throw std::invalid_argument("goal segment duration must be >= 0");
    if (s.start < end) throw std::invalid_argument("goal segments overlap or are unsorted");
    end = s.start + s.duration;
  }
  for (const ObstacleTrack& o : obstacles) {
    if (!(o.radius >= 0.0)) throw std::invalid_argument("obstacle radius must be >= 0");
    for (const MotionSegment& s : o.segments) {
      if (!(s.duration >= 0.0) || !s.velocity.allFinite()) {
        throw std::invalid_argument("invalid obstacle motion segment");
      }
    }
  }
}

using detail::Field;
using detail::json;

namespace {

std::string param_value_string(const Field& f) {
  const json& v = f.node();
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) {
    // round-trip formatting
    return v.dump();
  }
  f.fail("expected a number, string or boolean");
}

Eigen::Vector3d aim_point(const Field& aim, const Scenario& sc, const ChainState& start) {
  if (aim.has("point")) return aim.at("point").vec3();
  if (aim.has("end_effector")) return start.end_effector.translation;
  if (aim.has("link")) {
    const int link = aim.at("link").integer();
    for (const LinkSphere& s : sc.model.link_shapes()) {
      if (s.link == link) return start.link_poses[static_cast<size_t>(link)] * s.offset.translation;
    }
    aim.at("link").fail("no collision sphere on link " + std::to_string(link));
  }
  aim.fail("expected one of \"point\", \"link\", \"end_effector\"");
}

Scenario scenario_from_json(const json& root, const std::string& source,
                            const std::string& base_dir) {
  const Field top(root, "", source);
  top.expect_object();

  const std::string robot = top.has("robot") ? top.at("robot").string() : "panda";
  Scenario sc = [&] {
    try {
      return Scenario(resolve_robot_model(robot, base_dir));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      top.at("robot").fail(e.what());
    }
  }();
  sc.model_ref = robot;
  sc.name = top.has("name") ? top.at("name").string()
                            : std::filesystem::path(source).stem().string();

  const Field q0 = top.at("q0");
  if (q0.node().is_string()) {
    if (q0.string() != "ready" || sc.model.name() != "panda") {
      q0.fail("\"ready\" is only defined for the panda model");
    }
    sc.q0 = panda_ready_configuration();
  } else {
    sc.q0 = q0.vector();
    if (sc.q0.size() != sc.model.dof()) {
      q0.fail("expected " + std::to_string(sc.model.dof()) + " joint values");
    }
  }

  if (top.has("dt")) {
    sc.dt = top.at("dt").number();
    if (!(sc.dt > 0.0)) top.at("dt").fail("dt must be positive");
  }
  if (top.has("max_time")) {
    sc.max_time = top.at("max_time").number();
    if (!(sc.max_time >= sc.dt)) top.at("max_time").fail("max_time must be at least dt");
  }

  if (top.has("params")) {
    const Field params = top.at("params");
    params.expect_object();
    for (const auto& item : params.node().items()) {
      const Field f = params.at(item.key());
      try {
        set_param(sc.params, item.key(), param_value_string(f));
      } catch (const std::invalid_argument& e) {
        f.fail(e.what());
      }
    }
    try {
      sc.params.validate();
    } catch (const std::invalid_argument& e) {
      params.fail(e.what());
    }
  }

  const ChainState start = chain_state(sc.model, sc.q0);

  const Field goal = top.at("goal");
  goal.expect_object();
  if (goal.has("pose")) {
    sc.goal.initial = goal.at("pose").pose();
  } else if (goal.has("offset")) {
    const Field off = goal.at("offset");
    off.expect_object();
    sc.goal.initial = start.end_effector;
    if (off.has("xyz")) sc.goal.initial.translation += off.at("xyz").vec3();
    if (off.has("rpy")) {
      sc.goal.initial.rotation = rpy_to_rotation(off.at("rpy").vec3()) * sc.goal.initial.rotation;
    }
  } else {
    goal.fail("expected \"pose\" or \"offset\"");
  }
  if (goal.has("segments")) {
    const Field segs = goal.at("segments");
    double end = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < segs.size(); ++i) {
      const Field s = segs.at(i);
      GoalSegment g;
      g.start = s.at("start").number();
      g.duration = s.at("duration").number();
      if (g.duration < 0.0) s.at("duration").fail("duration must be non-negative");
      if (g.start < end) s.at("start").fail("goal segments must be sorted and non-overlapping");
      end = g.start + g.duration;
      if (s.has("v")) g.twist.v = s.at("v").vec3();
      if (s.has("w")) g.twist.w = s.at("w").vec3();
      sc.goal.segments.push_back(g);
    }
  }

  if (top.has("obstacles")) {
    const Field obs = top.at("obstacles");
    for (size_t i = 0; i < obs.size(); ++i) {
      const Field o = obs.at(i);
      ObstacleTrack track;
      track.center = o.at("center").vec3();
      track.radius = o.at("radius").number();
      if (track.radius < 0.0) o.at("radius").fail("radius must be non-negative");
      double duration = std::numeric_limits<double>::infinity();
      if (o.has("duration")) {
        duration = o.at("duration").number();
        if (duration < 0.0) o.at("duration").fail("duration must be non-negative");
      }
      if (o.has("velocity")) {
        track.segments.push_back({0.0, duration, o.at("velocity").vec3()});
      } else if (o.has("speed")) {
        const double speed = o.at("speed").number();
        const Eigen::Vector3d dir = aim_point(o.at("aim"), sc, start) - track.center;
        if (dir.norm() < 1e-12) o.at("aim").fail("aim point coincides with the obstacle centre");
        track.segments.push_back({0.0, duration, speed * dir.normalized()});
      } else if (o.has("segments")) {
        const Field segs = o.at("segments");
        for (size_t k = 0; k < segs.size(); ++k) {
          const Field s = segs.at(k);
          MotionSegment m;
          m.start = s.at("start").number();
          m.duration = s.at("duration").number();
          if (m.duration < 0.0) s.at("duration").fail("duration must be non-negative");
          m.velocity = s.at("velocity").vec3();
          track.segments.push_back(m);
        }
      }
      sc.obstacles.push_back(track);
    }
  }

  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    top.fail(e.what());
  }
  return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source,
                        const std::string& base_dir) {
  return scenario_from_json(detail::parse_json_text(text, source), source, base_dir);
}

Scenario load_scenario(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return scenario_from_json(detail::parse_json_file(path), path, dir.empty() ? "." : dir);
}

}  // namespace neo
