#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "neo/cli.hpp"
#include "neo/trace_csv.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kData = NEO_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "neo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = neo::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / ("neo_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, RunWritesTraceAndSucceeds) {
  const fs::path csv = temp_dir() / "trace.csv";
  const Result r = invoke({"run", kData + "/scenarios/exp1a", "--out", csv.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("exp1a: reached"), std::string::npos);
  EXPECT_NE(r.out.find("min_clearance="), std::string::npos);
  std::ifstream in(csv);
  const auto trace = neo::parse_trace_csv(in, csv.string());
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(neo::to_string(trace.back().status), "reached");
}

TEST(Cli, AblationExitsWithFailure) {
  const Result r = invoke({"run", kData + "/scenarios/exp1a.json", "--set", "xi=0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("collided"), std::string::npos);
}

TEST(Cli, MalformedScenarioExitsTwoNamingField) {
  const fs::path bad = temp_dir() / "bad.json";
  std::ofstream(bad) << R"({"q0": "ready", "goal": {"offset": {"xyz": [0, 0, 0.1]}},
  "obstacles": [{"center": [1, 0], "radius": 0.05}]})";
  const Result r = invoke({"run", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("obstacles[0].center"), std::string::npos) << r.err;
}

TEST(Cli, SyntaxErrorExitsTwoWithLineColumn) {
  const fs::path bad = temp_dir() / "syntax.json";
  std::ofstream(bad) << "{\n  \"q0\": \"ready\"\n  \"goal\": {}\n}";
  const Result r = invoke({"run", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("syntax.json:3:"), std::string::npos) << r.err;
}

TEST(Cli, UnknownOverrideAndBadArguments) {
  EXPECT_EQ(invoke({"run", kData + "/scenarios/exp1a", "--set", "gamma=1"}).code, 2);
  EXPECT_EQ(invoke({"run", kData + "/scenarios/exp1a", "--repeat", "0"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"run", kData + "/scenarios/missing"}).code, 2);
}

TEST(Cli, RunWithDtOverride) {
  const Result r = invoke({"run", kData + "/scenarios/exp1a", "--dt", "0.01"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, BenchSuiteAllReachedAndDeterministic) {
  const std::string suite = kData + "/suites/exp1.suite";
  const Result a = invoke({"bench", suite});
  const Result b = invoke({"bench", suite});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("success rate: 3/3"), std::string::npos) << a.out;
  auto success_columns = [](const std::string& table) {
    std::istringstream in(table);
    std::string line, cols;
    while (std::getline(in, line)) {
      std::istringstream words(line);
      std::string name, result;
      words >> name >> result;
      cols += name + " " + result + "\n";
    }
    return cols;
  };
  EXPECT_EQ(success_columns(a.out), success_columns(b.out));
}

TEST(Cli, EmptyOrBrokenSuiteExitsTwo) {
  const fs::path dir = temp_dir();
  std::ofstream(dir / "empty.suite") << "# nothing here\n\n";
  EXPECT_EQ(invoke({"bench", (dir / "empty.suite").string()}).code, 2);
  std::ofstream(dir / "missing.suite") << "no_such_scenario.json\n";
  EXPECT_EQ(invoke({"bench", (dir / "missing.suite").string()}).code, 2);
  EXPECT_EQ(invoke({"bench", (dir / "absent.suite").string()}).code, 2);
}
