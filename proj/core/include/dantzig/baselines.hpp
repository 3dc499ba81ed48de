#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "dantzig/problem.hpp"

namespace dantzig {

// Both baselines work on the D = I reformulation
//   min ||beta||_1  s.t.  X^T (X beta - y) = tau, ||tau||_inf <= delta
// and refuse instances whose column scaling deviates from 1.

struct AdmConfig {
  double c = 1.0;               // augmented-Lagrangian penalty
  int inner_max_iters = 200;    // nonmonotone BB proximal-gradient budget
  double inner_tol = 1e-6;      // on the unit-step proximal-gradient residual
  int outer_max_iters = 2000;
  double outer_tol = 1e-4;      // on the relative beta change
  int nonmonotone_memory = 10;
};

struct LadmConfig {
  double c = 1.0;
  double ell = 0.0;  // proximal parameter; <= 0 derives 2.001 * ||X^T X||^2
  int max_iters = 50000;
  double tol = 1e-4;
};

// Snapshot handed to observers after each outer iteration.
struct OuterIterate {
  int outer_iteration;
  const Eigen::VectorXd& beta;
  const Eigen::VectorXd& tau;
  const Eigen::VectorXd& gamma;
  const Eigen::VectorXd& gamma_prev;
  const Eigen::VectorXd& xtx_residual;  // X^T (X beta - y)
};
using OuterObserver = std::function<void(const OuterIterate&)>;

// Alternating direction method: tau-projection, approximate beta-subproblem
// via a nonmonotone Barzilai-Borwein proximal-gradient loop, multiplier
// update. SolveResult::iterations counts total inner iterations.
SolveResult adm_solve(const ProblemInstance& problem, const AdmConfig& cfg,
                      const OuterObserver& observer = {});

// Linearized ADM: closed-form soft-threshold beta step (order of the tau and
// beta updates reversed relative to ADM). SolveResult::iterations counts
// outer iterations.
SolveResult ladm_solve(const ProblemInstance& problem, const LadmConfig& cfg,
                       const OuterObserver& observer = {});

}  // namespace dantzig
