#include "neo/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/QR>

namespace neo {

QPProblem QPProblem::unconstrained(Eigen::MatrixXd Q, Eigen::VectorXd c) {
  QPProblem p;
  const auto m = c.size();
  p.Q = std::move(Q);
  p.c = std::move(c);
  p.A_eq.resize(0, m);
  p.b_eq.resize(0);
  p.A_in.resize(0, m);
  p.b_in.resize(0);
  p.lower = Eigen::VectorXd::Constant(m, -kInfinityBound);
  p.upper = Eigen::VectorXd::Constant(m, kInfinityBound);
  return p;
}

void QPProblem::validate() const {
  const auto m = c.size();
  if (m == 0) throw std::invalid_argument("QP has no variables");
  if (Q.rows() != m || Q.cols() != m) throw std::invalid_argument("Q must be m x m");
  if (A_eq.cols() != m || A_eq.rows() != b_eq.size()) {
    throw std::invalid_argument("equality block has inconsistent dimensions");
  }
  if (A_eq.rows() > m) throw std::invalid_argument("more equalities than variables");
  if (A_in.cols() != m || A_in.rows() != b_in.size()) {
    throw std::invalid_argument("inequality block has inconsistent dimensions");
  }
  if (lower.size() != m || upper.size() != m) throw std::invalid_argument("bounds must be m-vectors");
  if (!Q.allFinite() || !c.allFinite() || !A_eq.allFinite() || !b_eq.allFinite() ||
      !A_in.allFinite() || !b_in.allFinite()) {
    throw std::invalid_argument("QP data must be finite");
  }
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Q is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(Q);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("Q is not positive definite");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::isnan(lower(i)) || std::isnan(upper(i)) || lower(i) > upper(i)) {
      throw std::invalid_argument("lower bound exceeds upper bound at index " + std::to_string(i));
    }
  }
}

std::string to_string(QPStatus status) {
  switch (status) {
    case QPStatus::optimal: return "optimal";
    case QPStatus::infeasible: return "infeasible";
    case QPStatus::max_iterations: return "max_iterations";
  }
  return "unknown";
}

double objective(const QPProblem& problem, const Eigen::VectorXd& x) {
  return 0.5 * x.dot(problem.Q * x) + problem.c.dot(x);
}

namespace {

bool finite_bound(double b) { return std::abs(b) < kInfinityBound; }

enum class Origin { eq, in, lower, upper };

// Constraint in the solver's normal form n^T x >= b (equalities: n^T x = b).
struct Constraint {
  Eigen::VectorXd n;
  double b = 0.0;
  Origin origin = Origin::in;
  Eigen::Index index = 0;
  double sign = 1.0;           // equalities may be flipped when added
  Eigen::VectorXd scaled;      // L^-1 n, with Q = L L^T
  double norm = 1.0;
};

class DualActiveSet {
 public:
  DualActiveSet(const QPProblem& p, const QPSettings& settings)
      : problem_(p), settings_(settings), llt_(p.Q) {
    const auto m = p.c.size();
    for (Eigen::Index i = 0; i < p.A_eq.rows(); ++i) {
      add_constraint(p.A_eq.row(i).transpose(), p.b_eq(i), Origin::eq, i);
    }
    for (Eigen::Index i = 0; i < p.A_in.rows(); ++i) {
      add_constraint(-p.A_in.row(i).transpose(), -p.b_in(i), Origin::in, i);
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      if (finite_bound(p.lower(i))) {
        add_constraint(Eigen::VectorXd::Unit(m, i), p.lower(i), Origin::lower, i);
      }
      if (finite_bound(p.upper(i))) {
        add_constraint(-Eigen::VectorXd::Unit(m, i), -p.upper(i), Origin::upper, i);
      }
    }
    c_scaled_ = lower_solve(p.c);
  }

  QPSolution run() {
    QPSolution sol;
    x_ = -llt_.solve(problem_.c);

    QPStatus status = QPStatus::optimal;
    for (size_t k = 0; k < cons_.size() && status == QPStatus::optimal; ++k) {
      if (cons_[k].origin != Origin::eq) continue;
      const double s = slack(k);
      if (s > 0.0) {
        cons_[k].n = -cons_[k].n;
        cons_[k].b = -cons_[k].b;
        cons_[k].scaled = -cons_[k].scaled;
        cons_[k].sign = -1.0;
      }
      status = enter(k);
    }

    const double feas_tol = 1e-2 * settings_.tolerance;
    while (status == QPStatus::optimal) {
      std::ptrdiff_t worst = -1;
      double worst_value = -feas_tol;
      for (size_t k = 0; k < cons_.size(); ++k) {
        if (cons_[k].origin == Origin::eq || is_active(k)) continue;
        const double v = slack(k) / cons_[k].norm;
        if (v < worst_value) {
          worst_value = v;
          worst = static_cast<std::ptrdiff_t>(k);
        }
      }
      if (worst < 0) break;
      status = enter(static_cast<size_t>(worst));
    }

    if (status == QPStatus::optimal) polish();

    sol.status = status;
    sol.iterations = iterations_;
    sol.x = x_;
    sol.multipliers = multipliers();
    sol.objective = objective(problem_, x_);
    sol.kkt_residual = kkt_residual(problem_, x_, sol.multipliers);
    return sol;
  }

 private:
  void add_constraint(Eigen::VectorXd n, double b, Origin origin, Eigen::Index index) {
    Constraint c;
    c.norm = std::max(n.norm(), 1e-300);
    c.scaled = lower_solve(n);
    c.n = std::move(n);
    c.b = b;
    c.origin = origin;
    c.index = index;
    cons_.push_back(std::move(c));
  }

  Eigen::VectorXd lower_solve(const Eigen::VectorXd& v) const {
    return llt_.matrixL().solve(v);
  }

  Eigen::VectorXd upper_solve(const Eigen::VectorXd& v) const {
    return llt_.matrixU().solve(v);
  }

  double slack(size_t k) const { return cons_[k].n.dot(x_) - cons_[k].b; }

  bool is_active(size_t k) const {
    return std::find(active_.begin(), active_.end(), k) != active_.end();
  }

  Eigen::MatrixXd scaled_active() const {
    Eigen::MatrixXd m(problem_.c.size(), static_cast<Eigen::Index>(active_.size()));
    for (size_t a = 0; a < active_.size(); ++a) {
      m.col(static_cast<Eigen::Index>(a)) = cons_[active_[a]].scaled;
    }
    return m;
  }

  // Adds constraint p to the active set, dropping blocking inequalities on the way.
  QPStatus enter(size_t p) {
    const double inf = std::numeric_limits<double>::infinity();
    double u_p = 0.0;
    while (true) {
      if (++iterations_ > settings_.max_iterations) return QPStatus::max_iterations;

      const Eigen::VectorXd& g = cons_[p].scaled;
      Eigen::VectorXd r;
      Eigen::VectorXd w = g;
      if (!active_.empty()) {
        const Eigen::MatrixXd m = scaled_active();
        r = m.colPivHouseholderQr().solve(g);
        w = g - m * r;
      }
      const double zn = w.squaredNorm();  // z^T n_p with z = L^-T w
      const bool dependent = zn <= 1e-13 * g.squaredNorm();

      double t1 = inf;
      std::ptrdiff_t drop = -1;
      for (size_t a = 0; a < active_.size(); ++a) {
        if (cons_[active_[a]].origin == Origin::eq) continue;
        const double ra = r(static_cast<Eigen::Index>(a));
        if (ra > 0.0) {
          const double ratio = u_[a] / ra;
          if (ratio < t1) {
            t1 = ratio;
            drop = static_cast<std::ptrdiff_t>(a);
          }
        }
      }
      const double s = slack(p);
      double t2 = inf;
      if (!dependent) {
        t2 = std::max(0.0, -s / zn);
      } else if (cons_[p].origin == Origin::eq && std::abs(s) <= 1e-2 * settings_.tolerance) {
        return QPStatus::optimal;  // redundant, already satisfied
      }

      const double t = std::min(t1, t2);
      if (t == inf) return QPStatus::infeasible;

      for (size_t a = 0; a < active_.size(); ++a) {
        u_[a] -= t * r(static_cast<Eigen::Index>(a));
      }
      u_p += t;
      if (t2 < inf) {
        x_ += t * upper_solve(w);
      }
      if (t2 <= t1) {
        active_.push_back(p);
        u_.push_back(u_p);
        return QPStatus::optimal;
      }
      active_.erase(active_.begin() + drop);
      u_.erase(u_.begin() + drop);
    }
  }

  // Re-solves the equality-constrained problem on the final active set.
  void polish() {
    if (active_.empty()) return;
    const Eigen::MatrixXd m = scaled_active();
    Eigen::VectorXd b(static_cast<Eigen::Index>(active_.size()));
    for (size_t a = 0; a < active_.size(); ++a) b(static_cast<Eigen::Index>(a)) = cons_[active_[a]].b;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    if (qr.rank() < m.cols()) return;
    // (M^T M) u = b + M^T h  with h = L^-1 c
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(m.cols(), m.cols()).triangularView<Eigen::Upper>();
    const Eigen::VectorXd rhs = qr.colsPermutation().transpose() * (b + m.transpose() * c_scaled_);
    const Eigen::VectorXd y = r.transpose().triangularView<Eigen::Lower>().solve(rhs);
    const Eigen::VectorXd u = qr.colsPermutation() * r.triangularView<Eigen::Upper>().solve(y);
    const Eigen::VectorXd x = upper_solve(m * u - c_scaled_);

    for (size_t a = 0; a < active_.size(); ++a) {
      if (cons_[active_[a]].origin != Origin::eq && u(static_cast<Eigen::Index>(a)) < -1e-10) return;
    }
    const Eigen::VectorXd old_x = x_;
    const double old_violation = primal_violation(problem_, x_);
    x_ = x;
    if (primal_violation(problem_, x_) > std::max(old_violation, 1e-2 * settings_.tolerance)) {
      x_ = old_x;
      return;
    }
    for (size_t a = 0; a < active_.size(); ++a) {
      const double ua = u(static_cast<Eigen::Index>(a));
      u_[a] = cons_[active_[a]].origin == Origin::eq ? ua : std::max(ua, 0.0);
    }
  }

  QPMultipliers multipliers() const {
    QPMultipliers mu;
    const auto m = problem_.c.size();
    mu.eq = Eigen::VectorXd::Zero(problem_.A_eq.rows());
    mu.in = Eigen::VectorXd::Zero(problem_.A_in.rows());
    mu.lower = Eigen::VectorXd::Zero(m);
    mu.upper = Eigen::VectorXd::Zero(m);
    for (size_t a = 0; a < active_.size(); ++a) {
      const Constraint& c = cons_[active_[a]];
      switch (c.origin) {
        case Origin::eq: mu.eq(c.index) = -c.sign * u_[a]; break;
        case Origin::in: mu.in(c.index) = u_[a]; break;
        case Origin::lower: mu.lower(c.index) = u_[a]; break;
        case Origin::upper: mu.upper(c.index) = u_[a]; break;
      }
    }
    return mu;
  }

  const QPProblem& problem_;
  QPSettings settings_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  std::vector<Constraint> cons_;
  Eigen::VectorXd c_scaled_;
  Eigen::VectorXd x_;
  std::vector<size_t> active_;
  std::vector<double> u_;
  int iterations_ = 0;
};

}  // namespace

QPSolution solve(const QPProblem& problem, const QPSettings& settings) {
  problem.validate();
  return DualActiveSet(problem, settings).run();
}

double primal_violation(const QPProblem& p, const Eigen::VectorXd& x) {
  double v = 0.0;
  if (p.A_eq.rows() > 0) v = std::max(v, (p.A_eq * x - p.b_eq).cwiseAbs().maxCoeff());
  if (p.A_in.rows() > 0) v = std::max(v, (p.A_in * x - p.b_in).maxCoeff());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (finite_bound(p.lower(i))) v = std::max(v, p.lower(i) - x(i));
    if (finite_bound(p.upper(i))) v = std::max(v, x(i) - p.upper(i));
  }
  return v;
}

double kkt_residual(const QPProblem& p, const Eigen::VectorXd& x, const QPMultipliers& mu) {
  const auto m = x.size();
  Eigen::VectorXd stationarity = p.Q * x + p.c;
  if (p.A_eq.rows() > 0) stationarity += p.A_eq.transpose() * mu.eq;
  if (p.A_in.rows() > 0) stationarity += p.A_in.transpose() * mu.in;

  double dual = 0.0;
  double complementarity = 0.0;
  for (Eigen::Index i = 0; i < p.A_in.rows(); ++i) {
    dual = std::max(dual, -mu.in(i));
    complementarity = std::max(complementarity, std::abs(mu.in(i) * (p.b_in(i) - p.A_in.row(i).dot(x))));
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (finite_bound(p.lower(i))) {
      stationarity(i) -= mu.lower(i);
      dual = std::max(dual, -mu.lower(i));
      complementarity = std::max(complementarity, std::abs(mu.lower(i) * (x(i) - p.lower(i))));
    }
    if (finite_bound(p.upper(i))) {
      stationarity(i) += mu.upper(i);
      dual = std::max(dual, -mu.upper(i));
      complementarity = std::max(complementarity, std::abs(mu.upper(i) * (p.upper(i) - x(i))));
    }
  }
  const double stat = m > 0 ? stationarity.cwiseAbs().maxCoeff() : 0.0;
  return std::max({stat, primal_violation(p, x), dual, complementarity});
}

}  // namespace neo
