#include "neo/qp_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json_fields.hpp"

namespace neo {

using detail::Field;
using detail::json;

namespace {

json matrix_to_json(const Eigen::MatrixXd& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    rows.push_back(detail::vec_to_json(a.row(i).transpose()));
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const Field& f, Eigen::Index cols) {
  const size_t rows = f.size();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows), cols);
  for (size_t i = 0; i < rows; ++i) {
    const Eigen::VectorXd row = f.at(i).vector();
    if (row.size() != cols) f.at(i).fail("row has " + std::to_string(row.size()) +
                                         " entries, expected " + std::to_string(cols));
    a.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return a;
}

}  // namespace

std::string qp_to_json(const QPProblem& p) {
  json root{{"Q", matrix_to_json(p.Q)},
            {"c", detail::vec_to_json(p.c)},
            {"A_eq", matrix_to_json(p.A_eq)},
            {"b_eq", detail::vec_to_json(p.b_eq)},
            {"A_in", matrix_to_json(p.A_in)},
            {"b_in", detail::vec_to_json(p.b_in)},
            {"lower", detail::vec_to_json(p.lower)},
            {"upper", detail::vec_to_json(p.upper)}};
  return root.dump(1);
}

QPProblem qp_from_json(const std::string& text, const std::string& source) {
  const json root = detail::parse_json_text(text, source);
  const Field top(root, "", source);
  QPProblem p;
  p.c = top.at("c").vector();
  const auto m = p.c.size();
  p.Q = matrix_from(top.at("Q"), m);
  p.A_eq = matrix_from(top.at("A_eq"), m);
  p.b_eq = top.at("b_eq").vector();
  p.A_in = matrix_from(top.at("A_in"), m);
  p.b_in = top.at("b_in").vector();
  p.lower = top.at("lower").vector();
  p.upper = top.at("upper").vector();
  return p;
}

void write_qp_file(const std::string& path, const QPProblem& problem) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << qp_to_json(problem) << '\n';
}

QPProblem read_qp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "0:0", "cannot open file");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return qp_from_json(text, path);
}

}  // namespace neo
