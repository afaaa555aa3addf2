#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace neo::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // run did not reach the goal, or runtime error
inline constexpr int kExitUsage = 2;    // bad arguments or malformed input

struct RunOptions {
  std::string scenario;               // path; ".json" is appended if missing
  std::optional<std::string> out;     // trace CSV
  std::vector<std::string> sets;      // "key=value" parameter overrides
  std::optional<double> dt;
  int repeat = 1;
};

struct BenchOptions {
  std::string suite;                  // text file: one scenario path per line, # comments
  std::vector<std::string> sets;
};

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err);
int bench_command(const BenchOptions& options, std::ostream& out, std::ostream& err);

/// Full command line: `neo run ...` / `neo bench ...`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace neo::cli
