#include "neo/trace_csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "neo/errors.hpp"

namespace neo {

namespace {

void put(std::string& line, double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, r.ptr);
  line.push_back(',');
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string where(size_t line, size_t col) {
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<StepTrace>& trace) {
  if (trace.empty()) throw std::invalid_argument("empty trace");
  const Eigen::Index n = trace.front().q.size();
  const size_t n_obs = trace.front().clearance.size();
  std::string header = "t,";
  for (Eigen::Index i = 0; i < n; ++i) header += "q" + std::to_string(i) + ",";
  for (Eigen::Index i = 0; i < n; ++i) header += "qd" + std::to_string(i) + ",";
  for (int i = 0; i < 6; ++i) header += "delta" + std::to_string(i) + ",";
  for (size_t i = 0; i < n_obs; ++i) header += "clearance" + std::to_string(i) + ",";
  header += "manipulability,pos_err,ang_err,solve_ms,status\n";
  out << header;
  for (const StepTrace& s : trace) {
    if (s.q.size() != n || s.qd.size() != n || s.clearance.size() != n_obs) {
      throw std::invalid_argument("trace rows have inconsistent sizes");
    }
    std::string line;
    put(line, s.t);
    for (Eigen::Index i = 0; i < n; ++i) put(line, s.q[i]);
    for (Eigen::Index i = 0; i < n; ++i) put(line, s.qd[i]);
    for (int i = 0; i < 6; ++i) put(line, s.delta[i]);
    for (double d : s.clearance) put(line, d);
    put(line, s.manipulability);
    put(line, s.position_error);
    put(line, s.angle_error);
    put(line, s.solve_ms);
    line += to_string(s.status);
    line.push_back('\n');
    out << line;
  }
}

void write_trace_csv_file(const std::string& path, const std::vector<StepTrace>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_trace_csv(out, trace);
}

std::vector<StepTrace> parse_trace_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, "1:1", "missing header");
  const std::vector<std::string> head = split(line);
  Eigen::Index n = 0;
  size_t n_obs = 0;
  for (const std::string& h : head) {
    if (h.size() > 1 && h[0] == 'q' && h[1] != 'd') ++n;
    if (h.rfind("clearance", 0) == 0) ++n_obs;
  }
  const size_t expected = 1 + 2 * static_cast<size_t>(n) + 6 + n_obs + 5;
  if (head.size() != expected || head.front() != "t" || head.back() != "status") {
    throw ParseError(source, "1:1", "unrecognized header");
  }

  std::vector<StepTrace> trace;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != expected) {
      throw ParseError(source, where(line_no, 1),
                       "expected " + std::to_string(expected) + " columns, got " +
                           std::to_string(cells.size()));
    }
    size_t col = 0;
    size_t offset = 1;
    auto num = [&]() {
      const std::string& c = cells[col];
      double v = 0.0;
      const auto r = std::from_chars(c.data(), c.data() + c.size(), v);
      if (r.ec != std::errc() || r.ptr != c.data() + c.size()) {
        throw ParseError(source, where(line_no, offset), "invalid number '" + c + "'");
      }
      offset += c.size() + 1;
      ++col;
      return v;
    };
    StepTrace s;
    s.t = num();
    s.q.resize(n);
    s.qd.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) s.q[i] = num();
    for (Eigen::Index i = 0; i < n; ++i) s.qd[i] = num();
    for (int i = 0; i < 6; ++i) s.delta[i] = num();
    s.clearance.resize(n_obs);
    for (double& d : s.clearance) d = num();
    s.manipulability = num();
    s.position_error = num();
    s.angle_error = num();
    s.solve_ms = num();
    try {
      s.status = trace_status_from_string(cells[col]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, where(line_no, offset), e.what());
    }
    trace.push_back(std::move(s));
  }
  return trace;
}

}  // namespace neo
