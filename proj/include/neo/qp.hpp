#pragma once

#include <string>

#include <Eigen/Core>

namespace neo {

/// Bounds at or beyond this magnitude are treated as infinite.
inline constexpr double kInfinityBound = 1e12;

/// min 1/2 x^T Q x + c^T x
/// s.t. A_eq x = b_eq, A_in x <= b_in, lower <= x <= upper.
struct QPProblem {
  Eigen::MatrixXd Q;
  Eigen::VectorXd c;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd A_in;
  Eigen::VectorXd b_in;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  /// Q and c set, no constraints, infinite bounds.
  static QPProblem unconstrained(Eigen::MatrixXd Q, Eigen::VectorXd c);

  Eigen::Index variables() const { return c.size(); }

  /// Throws std::invalid_argument on shape mismatch, asymmetric or non
  /// positive-definite Q, or lower > upper.
  void validate() const;
};

/// Lagrange multipliers with the sign convention
///   Q x + c + A_eq^T y + A_in^T z - mu_lower + mu_upper = 0,  z, mu >= 0.
struct QPMultipliers {
  Eigen::VectorXd eq;
  Eigen::VectorXd in;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class QPStatus { optimal, infeasible, max_iterations };

std::string to_string(QPStatus status);

struct QPSolution {
  Eigen::VectorXd x;
  QPStatus status = QPStatus::infeasible;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  QPMultipliers multipliers;
};

struct QPSettings {
  double tolerance = 1e-8;
  int max_iterations = 500;
};

/// Dense dual active-set solve (Goldfarb-Idnani). Equalities are added first
/// and never dropped; inequality and finite bound constraints enter in order
/// of largest normalised violation.
QPSolution solve(const QPProblem& problem, const QPSettings& settings = {});

double objective(const QPProblem& problem, const Eigen::VectorXd& x);

/// Max of the stationarity, primal feasibility, dual feasibility and
/// complementarity infinity norms. Infinite bounds are skipped.
double kkt_residual(const QPProblem& problem, const Eigen::VectorXd& x,
                    const QPMultipliers& multipliers);

/// Largest violation of any constraint at x (0 when feasible).
double primal_violation(const QPProblem& problem, const Eigen::VectorXd& x);

}  // namespace neo
