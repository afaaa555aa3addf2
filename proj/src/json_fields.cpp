#include "json_fields.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace neo::detail {

namespace {

std::string line_column(const std::string& text, size_t byte) {
  size_t line = 1;
  size_t col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& file) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token
    const size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    throw ParseError(file, line_column(text, byte),
                     pos == std::string::npos ? what : what.substr(pos));
  }
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, "0:0", "cannot open file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

bool Field::has(const std::string& key) const {
  return node_.is_object() && node_.contains(key);
}

Field Field::at(const std::string& key) const {
  expect_object();
  const std::string sub = path_.empty() ? key : path_ + "." + key;
  if (!node_.contains(key)) {
    throw ParseError(file_, sub, "missing required field");
  }
  return Field(node_.at(key), sub, file_);
}

Field Field::at(size_t index) const {
  expect_array();
  return Field(node_.at(index), path_ + "[" + std::to_string(index) + "]", file_);
}

size_t Field::size() const {
  expect_array();
  return node_.size();
}

void Field::fail(const std::string& what) const {
  throw ParseError(file_, path_.empty() ? "<root>" : path_, what);
}

double Field::number() const {
  if (!node_.is_number()) fail("expected a number");
  const double x = node_.get<double>();
  if (!std::isfinite(x)) fail("expected a finite number");
  return x;
}

int Field::integer() const {
  if (!node_.is_number_integer()) fail("expected an integer");
  return node_.get<int>();
}

bool Field::boolean() const {
  if (!node_.is_boolean()) fail("expected true or false");
  return node_.get<bool>();
}

std::string Field::string() const {
  if (!node_.is_string()) fail("expected a string");
  return node_.get<std::string>();
}

void Field::expect_array() const {
  if (!node_.is_array()) fail("expected an array");
}

void Field::expect_object() const {
  if (!node_.is_object()) fail("expected an object");
}

Eigen::VectorXd Field::vector() const {
  expect_array();
  Eigen::VectorXd v(static_cast<Eigen::Index>(node_.size()));
  for (size_t i = 0; i < node_.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = at(i).number();
  }
  return v;
}

Eigen::Vector3d Field::vec3() const {
  const Eigen::VectorXd v = vector();
  if (v.size() != 3) fail("expected 3 numbers");
  return v;
}

Pose Field::pose() const {
  expect_object();
  const Eigen::Vector3d xyz = has("xyz") ? at("xyz").vec3() : Eigen::Vector3d::Zero();
  const Eigen::Vector3d rpy = has("rpy") ? at("rpy").vec3() : Eigen::Vector3d::Zero();
  return Pose::from_xyz_rpy(xyz, rpy);
}

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json pose_to_json(const Pose& p) {
  return json{{"xyz", vec_to_json(p.translation)},
              {"rpy", vec_to_json(rotation_to_rpy(p.rotation))}};
}

}  // namespace neo::detail
