#pragma once

#include <string>

#include "neo/robot_model.hpp"

namespace neo {

/// Robot model file (JSON):
///
///   {
///     "name": "panda",
///     "base": {"xyz": [x, y, z], "rpy": [r, p, y]},        optional
///     "tool": {"xyz": [...], "rpy": [...]},                 optional
///     "joints": [
///       {"kind": "revolute" | "prismatic",
///        "xyz": [...], "rpy": [...],                        pre-transform
///        "axis": [ax, ay, az],                              default [0, 0, 1]
///        "q_limits": [lo, hi], "qd_limits": [lo, hi]}, ...
///     ],
///     "spheres": [{"link": k, "xyz": [...], "rpy": [...], "radius": r}, ...]
///   }
///
/// Angles in radians, lengths in metres. Throws ParseError.
RobotModel load_robot_model(const std::string& path);
RobotModel parse_robot_model(const std::string& text, const std::string& source = "<string>");
std::string robot_model_to_json(const RobotModel& model);

/// "panda" or "planar2" name a built-in model, anything else is a file path
/// (resolved relative to `base_dir` when not absolute).
RobotModel resolve_robot_model(const std::string& ref, const std::string& base_dir = ".");

}  // namespace neo
