#pragma once

#include <stdexcept>
#include <string>

namespace neo {

/// Malformed input file. `where()` is "line:column" for syntax errors or a
/// field path such as "obstacles[1].radius" for schema errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, const std::string& where, const std::string& what)
      : std::runtime_error(file + ":" + where + ": " + what), file_(file), where_(where) {}

  const std::string& file() const { return file_; }
  const std::string& where() const { return where_; }

 private:
  std::string file_;
  std::string where_;
};

}  // namespace neo
