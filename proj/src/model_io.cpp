#include "neo/model_io.hpp"

#include <filesystem>

#include "json_fields.hpp"

namespace neo {

using detail::Field;
using detail::json;

namespace {

RobotModel model_from_json(const json& root, const std::string& source) {
  Field top(root, "", source);
  top.expect_object();
  const std::string name = top.has("name") ? top.at("name").string() : "robot";
  const Pose base = top.has("base") ? top.at("base").pose() : Pose::identity();
  const Pose tool = top.has("tool") ? top.at("tool").pose() : Pose::identity();

  const Field joints_field = top.at("joints");
  const auto n = joints_field.size();
  if (n == 0) joints_field.fail("at least one joint is required");

  std::vector<JointSpec> joints;
  Eigen::VectorXd q_min(static_cast<Eigen::Index>(n)), q_max(q_min.size());
  Eigen::VectorXd qd_min(q_min.size()), qd_max(q_min.size());
  for (size_t i = 0; i < n; ++i) {
    const Field jf = joints_field.at(i);
    JointSpec spec;
    const std::string kind = jf.at("kind").string();
    if (kind == "revolute") {
      spec.kind = JointKind::revolute;
    } else if (kind == "prismatic") {
      spec.kind = JointKind::prismatic;
    } else {
      jf.at("kind").fail("expected \"revolute\" or \"prismatic\"");
    }
    spec.pre_transform = jf.pose();
    if (jf.has("axis")) {
      spec.axis = jf.at("axis").vec3();
      if (spec.axis.norm() < 1e-9) jf.at("axis").fail("axis must be non-zero");
      spec.axis.normalize();
    }
    const auto idx = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd ql = jf.at("q_limits").vector();
    const Eigen::VectorXd qdl = jf.at("qd_limits").vector();
    if (ql.size() != 2 || !(ql(0) < ql(1))) jf.at("q_limits").fail("expected [lo, hi] with lo < hi");
    if (qdl.size() != 2 || !(qdl(0) < 0.0 && qdl(1) > 0.0)) {
      jf.at("qd_limits").fail("expected [lo, hi] with lo < 0 < hi");
    }
    q_min(idx) = ql(0);
    q_max(idx) = ql(1);
    qd_min(idx) = qdl(0);
    qd_max(idx) = qdl(1);
    joints.push_back(spec);
  }

  std::vector<LinkSphere> spheres;
  if (top.has("spheres")) {
    const Field sf = top.at("spheres");
    for (size_t i = 0; i < sf.size(); ++i) {
      const Field s = sf.at(i);
      LinkSphere shape;
      shape.link = s.at("link").integer();
      if (shape.link < 0 || static_cast<size_t>(shape.link) >= n) {
        s.at("link").fail("link index out of range");
      }
      shape.offset = s.pose();
      shape.radius = s.at("radius").number();
      if (shape.radius < 0.0) s.at("radius").fail("radius must be non-negative");
      spheres.push_back(shape);
    }
  }

  try {
    return RobotModel(name, std::move(joints), base, tool, q_min, q_max, qd_min, qd_max,
                      std::move(spheres));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, "<root>", e.what());
  }
}

}  // namespace

RobotModel parse_robot_model(const std::string& text, const std::string& source) {
  return model_from_json(detail::parse_json_text(text, source), source);
}

RobotModel load_robot_model(const std::string& path) {
  return model_from_json(detail::parse_json_file(path), path);
}

std::string robot_model_to_json(const RobotModel& model) {
  json joints = json::array();
  for (int j = 0; j < model.dof(); ++j) {
    const JointSpec& spec = model.joints()[static_cast<size_t>(j)];
    json jj = detail::pose_to_json(spec.pre_transform);
    jj["kind"] = spec.kind == JointKind::revolute ? "revolute" : "prismatic";
    jj["axis"] = detail::vec_to_json(spec.axis);
    jj["q_limits"] = {model.q_min()(j), model.q_max()(j)};
    jj["qd_limits"] = {model.qd_min()(j), model.qd_max()(j)};
    joints.push_back(jj);
  }
  json spheres = json::array();
  for (const auto& s : model.link_shapes()) {
    json sj = detail::pose_to_json(s.offset);
    sj["link"] = s.link;
    sj["radius"] = s.radius;
    spheres.push_back(sj);
  }
  json root{{"name", model.name()},
            {"base", detail::pose_to_json(model.base_pose())},
            {"tool", detail::pose_to_json(model.tool_offset())},
            {"joints", joints},
            {"spheres", spheres}};
  return root.dump(2);
}

RobotModel resolve_robot_model(const std::string& ref, const std::string& base_dir) {
  if (ref == "panda") return make_panda();
  if (ref == "planar2") return make_planar_arm({1.0, 1.0});
  std::filesystem::path p(ref);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  return load_robot_model(p.string());
}

}  // namespace neo
