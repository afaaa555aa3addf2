#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "neo/sim.hpp"

namespace neo {

/// Columns: t, q0.., qd0.., delta0..5, clearance0.., manipulability,
/// pos_err, ang_err, solve_ms, status. Numbers use shortest round-trip
/// formatting, so parse_trace_csv(write) reproduces the trace exactly.
void write_trace_csv(std::ostream& out, const std::vector<StepTrace>& trace);
void write_trace_csv_file(const std::string& path, const std::vector<StepTrace>& trace);

/// Throws ParseError with a line:column location.
std::vector<StepTrace> parse_trace_csv(std::istream& in, const std::string& source = "<stream>");

}  // namespace neo
