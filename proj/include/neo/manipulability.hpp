#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace neo {

/// Raised when the manipulability gradient is requested too close to a
/// kinematic singularity.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kDefaultSingularThreshold = 1e-8;

struct ManipState {
  double m = 0.0;
  Eigen::VectorXd jm;  // dm/dq
};

/// Yoshikawa measure sqrt(det(J J^T)) for any r x n Jacobian with r <= n.
/// Determinants below 1e-14 in magnitude count as zero.
double manipulability(const Eigen::MatrixXd& j);

/// Gradient of the measure: component i is m * vec(J H_i^T) . vec((J J^T)^-1),
/// with H_i = dJ/dq_i of the same shape as J.
///
/// Throws SingularityError when m <= singular_threshold or when J J^T has a
/// condition number above 1e12.
Eigen::VectorXd manipulability_jacobian(const Eigen::MatrixXd& j,
                                        const std::vector<Eigen::MatrixXd>& h, double m,
                                        double singular_threshold = kDefaultSingularThreshold);

}  // namespace neo
