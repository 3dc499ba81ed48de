#include "dantzig/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "dantzig/errors.hpp"

namespace dantzig {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr double kPhase1Tol = 1e-8;

// Dense tableau simplex for min c^T x, G x <= u, x >= 0 (u may be negative).
// Bland's rule throughout: entering column is the lowest-index improving
// column, leaving row breaks ratio ties by lowest basic-variable index.
class SimplexTableau {
 public:
  SimplexTableau(const Eigen::MatrixXd& G, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& c)
      : m_(static_cast<int>(G.rows())), n_(static_cast<int>(G.cols())) {
    n_artificial_ = 0;
    for (int i = 0; i < m_; ++i)
      if (u(i) < 0.0) ++n_artificial_;
    total_ = n_ + m_ + n_artificial_;
    iteration_cap_ = 10 * total_;

    tableau_ = Eigen::MatrixXd::Zero(m_ + 1, total_ + 1);
    basis_.resize(m_);
    int artificial = 0;
    for (int i = 0; i < m_; ++i) {
      const double flip = u(i) < 0.0 ? -1.0 : 1.0;
      tableau_.block(i, 0, 1, n_) = flip * G.row(i);
      tableau_(i, n_ + i) = flip;  // slack
      tableau_(i, total_) = flip * u(i);
      if (u(i) < 0.0) {
        const int column = n_ + m_ + artificial++;
        tableau_(i, column) = 1.0;
        basis_[i] = column;
      } else {
        basis_[i] = n_ + i;
      }
    }

    if (n_artificial_ > 0) {
      Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(total_);
      phase1_cost.segment(n_ + m_, n_artificial_).setOnes();
      run_phase(phase1_cost, /*allow_artificial_entering=*/false);
      if (objective_value(phase1_cost) > kPhase1Tol)
        throw Infeasible("phase-1 simplex left positive artificial variables");
      drive_out_artificials();
    }

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(total_);
    cost.head(n_) = c;
    run_phase(cost, /*allow_artificial_entering=*/false);
    cost_ = cost;
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x(basis_[i]) = tableau_(i, total_);
    return x;
  }

  double objective() const { return objective_value(cost_); }

 private:
  bool is_artificial(int column) const { return column >= n_ + m_; }

  double objective_value(const Eigen::VectorXd& cost) const {
    double value = 0.0;
    for (int i = 0; i < m_; ++i)
      value += cost(basis_[i]) * tableau_(i, total_);
    return value;
  }

  void pivot(int row, int column) {
    tableau_.row(row) /= tableau_(row, column);
    for (int r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const double factor = tableau_(r, column);
      if (factor != 0.0) tableau_.row(r) -= factor * tableau_.row(row);
    }
    basis_[row] = column;
  }

  void run_phase(const Eigen::VectorXd& cost, bool allow_artificial_entering) {
    // Reduced-cost row: r_j = c_j - c_B^T B^{-1} A_j, kept in row m_.
    tableau_.row(m_).setZero();
    tableau_.block(m_, 0, 1, total_) = cost.transpose();
    for (int i = 0; i < m_; ++i) {
      const double cb = cost(basis_[i]);
      if (cb != 0.0) tableau_.row(m_) -= cb * tableau_.row(i);
    }

    for (int iter = 0; iter < iteration_cap_; ++iter) {
      int entering = -1;
      for (int j = 0; j < total_; ++j) {
        if (!allow_artificial_entering && is_artificial(j)) continue;
        if (tableau_(m_, j) < -kReducedCostTol) {
          entering = j;  // Bland: lowest improving index
          break;
        }
      }
      if (entering < 0) return;  // optimal

      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double coefficient = tableau_(i, entering);
        if (coefficient <= kPivotTol) continue;
        const double ratio = tableau_(i, total_) / coefficient;
        if (ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol &&
             (leaving < 0 || basis_[i] < basis_[leaving]))) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving < 0)
        throw Error("simplex: unbounded direction in a bounded program");
      pivot(leaving, entering);
    }
    throw Error("simplex iteration cap (10x variable count) exceeded");
  }

  // Degenerate pivots that remove zero-valued artificials from the basis;
  // rows with no usable non-artificial coefficient are vacuous.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (int j = 0; j < n_ + m_; ++j) {
        if (std::abs(tableau_(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  int m_, n_, n_artificial_, total_, iteration_cap_;
  Eigen::MatrixXd tableau_;
  std::vector<int> basis_;
  Eigen::VectorXd cost_;
};

}  // namespace

LpSolution lp_reference_solve(const ProblemInstance& problem) {
  validate_instance(problem);
  const Eigen::Index n = problem.n();
  const Eigen::Index p = problem.p();
  if (n > 24 || p > 24)
    throw SizeLimit("lp_reference_solve caps at n, p <= 24; got n = " +
                    std::to_string(n) + ", p = " + std::to_string(p));

  const Eigen::VectorXd b =
      (problem.X.transpose() * problem.y).cwiseQuotient(problem.D);

  LpSolution solution;
  if (b.lpNorm<Eigen::Infinity>() <= problem.delta) {
    solution.beta = Eigen::VectorXd::Zero(p);
    solution.objective = 0.0;
    return solution;
  }

  const Eigen::MatrixXd M =
      problem.D.cwiseInverse().asDiagonal() * (problem.X.transpose() * problem.X);

  // Variables x = [beta_plus; beta_minus]; constraints
  //   M beta_plus - M beta_minus <= b + delta
  //  -M beta_plus + M beta_minus <= delta - b.
  Eigen::MatrixXd G(2 * p, 2 * p);
  G.topLeftCorner(p, p) = M;
  G.topRightCorner(p, p) = -M;
  G.bottomLeftCorner(p, p) = -M;
  G.bottomRightCorner(p, p) = M;
  Eigen::VectorXd u(2 * p);
  u.head(p) = b.array() + problem.delta;
  u.tail(p) = problem.delta - b.array();
  const Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * p);

  SimplexTableau tableau(G, u, c);
  const Eigen::VectorXd x = tableau.solution();
  solution.beta = x.head(p) - x.tail(p);
  solution.objective = solution.beta.lpNorm<1>();
  return solution;
}

double feasibility_violation(const ProblemInstance& problem,
                             const Eigen::VectorXd& beta) {
  if (beta.size() != problem.p())
    throw DimensionMismatch("feasibility_violation: len(beta) != p");
  const Eigen::VectorXd residual = problem.X * beta - problem.y;
  const Eigen::VectorXd scaled =
      (problem.X.transpose() * residual).cwiseQuotient(problem.D);
  return std::max(0.0, scaled.lpNorm<Eigen::Infinity>() - problem.delta);
}

}  // namespace dantzig
