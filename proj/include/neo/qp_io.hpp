#pragma once

#include <string>

#include "neo/qp.hpp"

namespace neo {

/// JSON dump of a QP for offline reproduction:
///   {"Q": [[...], ...], "c": [...], "A_eq": [[...]], "b_eq": [...],
///    "A_in": [[...]], "b_in": [...], "lower": [...], "upper": [...]}
/// Numbers are written with round-trip precision; infinite bounds appear as
/// +-1e12.
std::string qp_to_json(const QPProblem& problem);
QPProblem qp_from_json(const std::string& text, const std::string& source = "<string>");

void write_qp_file(const std::string& path, const QPProblem& problem);
QPProblem read_qp_file(const std::string& path);

}  // namespace neo
