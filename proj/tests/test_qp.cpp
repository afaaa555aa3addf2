#include <gtest/gtest.h>

#include "neo/qp.hpp"
#include "neo/qp_io.hpp"
#include "oracles.hpp"

using namespace neo;

TEST(QPSolve, UnconstrainedMinimum) {
  const QPProblem p = QPProblem::unconstrained(Eigen::MatrixXd::Identity(2, 2),
                                               Eigen::VectorXd::Zero(2));
  const QPSolution s = solve(p);
  ASSERT_EQ(s.status, QPStatus::optimal);
  EXPECT_TRUE(s.x.isZero(1e-15));
  EXPECT_EQ(s.objective, 0.0);
}

TEST(QPSolve, EqualityProjection) {
  QPProblem p = QPProblem::unconstrained(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  p.A_eq = Eigen::RowVector2d(1, 1);
  p.b_eq = Eigen::VectorXd::Constant(1, 1.0);
  const QPSolution s = solve(p);
  ASSERT_EQ(s.status, QPStatus::optimal);
  EXPECT_NEAR(s.x[0], 0.5, 1e-12);
  EXPECT_NEAR(s.x[1], 0.5, 1e-12);
  EXPECT_LE(s.kkt_residual, 1e-8);
}

TEST(QPSolve, ActiveBoxAndInequality) {
  QPProblem p = QPProblem::unconstrained(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(-2, -2));
  p.A_in = Eigen::RowVector2d(1, 1);
  p.b_in = Eigen::VectorXd::Constant(1, 1.0);
  p.upper = Eigen::Vector2d(0.25, 10);
  const QPSolution s = solve(p);
  ASSERT_EQ(s.status, QPStatus::optimal);
  EXPECT_NEAR(s.x[0], 0.25, 1e-12);
  EXPECT_NEAR(s.x[1], 0.75, 1e-12);
  EXPECT_GT(s.multipliers.in[0], 0.0);
  EXPECT_GT(s.multipliers.upper[0], 0.0);
}

TEST(QPSolve, DetectsInfeasibility) {
  QPProblem p = QPProblem::unconstrained(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1));
  p.A_in = Eigen::MatrixXd::Constant(1, 1, 1.0);
  p.b_in = Eigen::VectorXd::Constant(1, -2.0);
  p.lower = Eigen::VectorXd::Constant(1, -1.0);
  EXPECT_EQ(solve(p).status, QPStatus::infeasible);
}

TEST(QPSolve, RejectsIndefiniteHessian) {
  const QPProblem p = QPProblem::unconstrained(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix(),
                                               Eigen::VectorXd::Zero(2));
  EXPECT_THROW(solve(p), std::invalid_argument);
}

TEST(QPSolve, MatchesActiveSetEnumeration) {
  oracle::Rng rng(41);
  std::uniform_int_distribution<int> vars(1, 4), ineq(0, 3), eq(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = vars(rng);
    const QPProblem p = oracle::random_qp(rng, n, ineq(rng), n > 1 ? eq(rng) : 0);
    const auto ref = oracle::enumerate_qp(p);
    ASSERT_TRUE(ref.has_value());
    const QPSolution s = solve(p);
    ASSERT_EQ(s.status, QPStatus::optimal) << "trial " << trial;
    EXPECT_LT(std::abs(s.objective - ref->objective), 1e-6) << "trial " << trial;
    EXPECT_LT((s.x - ref->x).cwiseAbs().maxCoeff(), 1e-5) << "trial " << trial;
    EXPECT_LE(s.kkt_residual, 1e-8) << "trial " << trial;
  }
}

TEST(QPSolve, BoxHonouredAtOptimum) {
  oracle::Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const QPProblem p = oracle::random_qp(rng, 4, 3, 0);
    const QPSolution s = solve(p);
    ASSERT_EQ(s.status, QPStatus::optimal);
    EXPECT_TRUE((s.x.array() >= p.lower.array() - 1e-8).all());
    EXPECT_TRUE((s.x.array() <= p.upper.array() + 1e-8).all());
  }
}

TEST(QPSolve, ScalingInvariance) {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const QPProblem p = oracle::random_qp(rng, 3, 2, 1);
    QPProblem scaled = p;
    scaled.Q *= 7.5;
    scaled.c *= 7.5;
    scaled.A_in *= 0.3;
    scaled.b_in *= 0.3;
    scaled.A_eq *= 4.0;
    scaled.b_eq *= 4.0;
    const QPSolution a = solve(p);
    const QPSolution b = solve(scaled);
    ASSERT_EQ(a.status, QPStatus::optimal);
    ASSERT_EQ(b.status, QPStatus::optimal);
    EXPECT_LT((a.x - b.x).cwiseAbs().maxCoeff(), 10 * 1e-8);
  }
}

TEST(QPSolve, NonBindingInequalityHasNoEffect) {
  oracle::Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const QPProblem p = oracle::random_qp(rng, 4, 2, 0);
    const QPSolution a = solve(p);
    ASSERT_EQ(a.status, QPStatus::optimal);
    QPProblem extra = p;
    const Eigen::VectorXd row = oracle::random_vector(4, rng);
    extra.A_in.conservativeResize(p.A_in.rows() + 1, Eigen::NoChange);
    extra.A_in.bottomRows(1) = row.transpose();
    extra.b_in.conservativeResize(p.b_in.size() + 1);
    extra.b_in[p.b_in.size()] = row.dot(a.x) + 0.1;
    const QPSolution b = solve(extra);
    ASSERT_EQ(b.status, QPStatus::optimal);
    EXPECT_LT((a.x - b.x).cwiseAbs().maxCoeff(), 10 * 1e-8);
  }
}

TEST(KktResidual, AnalyticEqualityOptimum) {
  QPProblem p = QPProblem::unconstrained(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  p.A_eq = Eigen::RowVector2d(1, 1);
  p.b_eq = Eigen::VectorXd::Constant(1, 1.0);
  QPMultipliers mu;
  mu.eq = Eigen::VectorXd::Constant(1, -0.5);
  mu.in = Eigen::VectorXd::Zero(0);
  mu.lower = Eigen::VectorXd::Zero(2);
  mu.upper = Eigen::VectorXd::Zero(2);
  EXPECT_LT(kkt_residual(p, Eigen::Vector2d(0.5, 0.5), mu), 1e-12);
}

TEST(KktResidual, GrowsWithPerturbation) {
  const QPProblem p = QPProblem::unconstrained(Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix(),
                                               Eigen::Vector2d(-2, -1));
  QPMultipliers mu;
  mu.eq = Eigen::VectorXd::Zero(0);
  mu.in = Eigen::VectorXd::Zero(0);
  mu.lower = Eigen::VectorXd::Zero(2);
  mu.upper = Eigen::VectorXd::Zero(2);
  const Eigen::Vector2d x(1, 1);
  EXPECT_LT(kkt_residual(p, x, mu), 1e-15);
  EXPECT_NEAR(kkt_residual(p, x + Eigen::Vector2d(1e-3, 0), mu), 2e-3, 1e-12);
}

TEST(PrimalViolation, EqualsLargestViolation) {
  QPProblem p = QPProblem::unconstrained(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  p.A_in = Eigen::RowVector2d(1, 0);
  p.b_in = Eigen::VectorXd::Constant(1, 1.0);
  p.upper = Eigen::Vector2d(5, 0.5);
  EXPECT_NEAR(primal_violation(p, Eigen::Vector2d(1.3, 0.9)), 0.4, 1e-15);
  EXPECT_EQ(primal_violation(p, Eigen::Vector2d(0, 0)), 0.0);
}

TEST(QPFile, RoundTripIsExact) {
  oracle::Rng rng(45);
  const QPProblem p = oracle::random_qp(rng, 4, 3, 1);
  const QPProblem back = qp_from_json(qp_to_json(p));
  EXPECT_EQ(back.Q, p.Q);
  EXPECT_EQ(back.c, p.c);
  EXPECT_EQ(back.A_in, p.A_in);
  EXPECT_EQ(back.b_in, p.b_in);
  EXPECT_EQ(back.A_eq, p.A_eq);
  EXPECT_EQ(back.b_eq, p.b_eq);
  EXPECT_EQ(back.lower, p.lower);
  EXPECT_EQ(back.upper, p.upper);
}
