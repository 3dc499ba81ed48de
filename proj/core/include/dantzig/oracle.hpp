#pragma once

#include <Eigen/Dense>

#include "dantzig/problem.hpp"

namespace dantzig {

struct LpSolution {
  Eigen::VectorXd beta;
  double objective = 0.0;  // ||beta||_1 at the optimum
};

// Exact reference solver for tiny instances (n, p <= 24 each). Splits
// beta = beta_plus - beta_minus and solves
//   min 1^T (beta_plus + beta_minus)
//   s.t. -delta <= D^{-1} X^T (X (beta_plus - beta_minus) - y) <= delta,
//        beta_plus, beta_minus >= 0
// with a dense two-phase simplex using Bland's rule (no cycling).
//
// Shortcut: when ||b||_inf <= delta the zero vector is feasible and optimal,
// so the simplex is skipped entirely.
LpSolution lp_reference_solve(const ProblemInstance& problem);

// max(0, ||D^{-1} X^T (X beta - y)||_inf - delta), evaluated densely and
// independently of DantzigOperator.
double feasibility_violation(const ProblemInstance& problem,
                             const Eigen::VectorXd& beta);

}  // namespace dantzig
