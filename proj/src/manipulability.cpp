#include "neo/manipulability.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace neo {

double manipulability(const Eigen::MatrixXd& j) {
  const Eigen::MatrixXd gram = j * j.transpose();
  const double det = gram.determinant();
  if (std::abs(det) < 1e-14 || det < 0.0) {
    return 0.0;
  }
  return std::sqrt(det);
}

Eigen::VectorXd manipulability_jacobian(const Eigen::MatrixXd& j,
                                        const std::vector<Eigen::MatrixXd>& h, double m,
                                        double singular_threshold) {
  if (!(m > singular_threshold)) {
    throw SingularityError("manipulability " + std::to_string(m) + " at or below threshold");
  }
  if (h.size() != static_cast<size_t>(j.cols())) {
    throw std::invalid_argument("hessian must have one slice per joint");
  }
  const Eigen::MatrixXd gram = j * j.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) {
    throw SingularityError("J J^T is ill-conditioned");
  }
  const Eigen::MatrixXd gram_inv =
      gram.llt().solve(Eigen::MatrixXd::Identity(gram.rows(), gram.cols()));

  Eigen::VectorXd jm(j.cols());
  for (Eigen::Index i = 0; i < j.cols(); ++i) {
    const Eigen::MatrixXd jh = j * h[static_cast<size_t>(i)].transpose();
    // vec(A)^T vec(B) == sum of elementwise products
    jm(i) = m * jh.cwiseProduct(gram_inv).sum();
  }
  return jm;
}

}  // namespace neo
