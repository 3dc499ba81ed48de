#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dantzig/linop.hpp"
#include "dantzig/problem.hpp"

namespace dantzig {

struct IterationRecord {
  int iteration;              // 1-based Stage-I iteration index
  double rel_change;          // ||b_k - b_{k-1}||_2 / ||b_{k-1}||_2;
                              // absolute change when the denominator is 0
  std::uint64_t support_hash; // fingerprint of supp(beta_k)
  int support_size;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  Termination termination = Termination::MaxIters;

  int iterations() const { return static_cast<int>(records.size()); }
};

struct StopDecision {
  bool stop = false;
  Termination reason = Termination::MaxIters;
};

// Stopping rule of the Stage-I loop. RelChange (last relative change <
// epsilon) is evaluated before SupportStationary (last eta+1 support
// fingerprints identical); the criteria are OR-ed.
StopDecision check_stop(const IterationTrace& trace, const SolverConfig& cfg);

// FNV-1a over the indices of the nonzero coordinates.
std::uint64_t support_fingerprint(const Eigen::VectorXd& beta);

struct Stage1Result {
  Eigen::VectorXd beta_inf;
  Eigen::VectorXd tau_inf;
  IterationTrace trace;
};

// Coupled fixed-point iteration from zero initial iterates.
//
// TauFirst:
//   tau^{k+1}  = st(A(2 beta^k - beta^{k-1}) + tau^k - b, delta)
//   beta^{k+1} = st(beta^k - (lambda/alpha) A^T tau^{k+1}, 1/alpha)
// BetaFirst reflects the ordering:
//   beta^{k+1} = st(beta^k - (lambda/alpha) A^T (2 tau^k - tau^{k-1}), 1/alpha)
//   tau^{k+1}  = st(A beta^{k+1} + tau^k - b, delta)
//
// cfg.lambda defaults to 0.999 * alpha / guarded_norm^2 when unset.
Stage1Result stage1(const DantzigOperator& op, const SolverConfig& cfg);

// Indices j with |beta_inf[j]| > tol, ascending. Throws EmptySupport when the
// set is empty.
std::vector<int> estimate_support(const Eigen::VectorXd& beta_inf, double tol);

struct Stage2Result {
  Eigen::VectorXd beta_hat;
  bool empty_support = false;  // support was empty; beta_hat = 0
};

// Least-squares refit on the estimated support: beta_hat restricted to the
// support minimizes ||X_Lambda v - y||_2 (minimum-norm solution when
// X_Lambda is rank-deficient); all other coordinates are exactly zero.
Stage2Result stage2(const ProblemInstance& problem,
                    const Eigen::VectorXd& beta_inf, double tol);

// Full two-stage solve: operator setup, Stage-I, and (when cfg.postprocess)
// the Stage-II refit. wall_seconds includes the spectral-norm estimation.
SolveResult solve(const ProblemInstance& problem, const SolverConfig& cfg,
                  std::uint64_t norm_seed = 1u);

// As above but reusing an already-constructed operator; wall_seconds then
// covers only the iteration and postprocessing.
SolveResult solve(const DantzigOperator& op, const SolverConfig& cfg);

}  // namespace dantzig
