#pragma once

// Field-path aware accessors over nlohmann::json, shared by the file readers.

#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "neo/errors.hpp"
#include "neo/se3.hpp"

namespace neo::detail {

using nlohmann::json;

json parse_json_text(const std::string& text, const std::string& file);
json parse_json_file(const std::string& path);

class Field {
 public:
  Field(const json& node, std::string path, const std::string& file)
      : node_(node), path_(std::move(path)), file_(file) {}

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const;
  Field at(const std::string& key) const;
  Field at(size_t index) const;
  size_t size() const;

  [[noreturn]] void fail(const std::string& what) const;

  double number() const;
  int integer() const;
  bool boolean() const;
  std::string string() const;
  Eigen::Vector3d vec3() const;
  Eigen::VectorXd vector() const;
  void expect_array() const;
  void expect_object() const;

  /// {"xyz": [...], "rpy": [...]}, both optional.
  Pose pose() const;

 private:
  const json& node_;
  std::string path_;
  const std::string& file_;
};

json vec_to_json(const Eigen::VectorXd& v);
json pose_to_json(const Pose& p);

}  // namespace neo::detail
