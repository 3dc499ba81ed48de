#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <cstdint>

#include "dantzig/problem.hpp"

namespace dantzig {

// Implicit application of A = D^{-1} X^T X and its transpose. A is never
// formed densely: one apply is two rectangular matvecs plus an O(p) diagonal
// scale, keeping the per-iteration cost at O(4np).
class DantzigOperator {
 public:
  // Caches b = D^{-1} X^T y and a power-iteration estimate of ||A||_2.
  // The seed fixes the power-iteration start vector.
  explicit DantzigOperator(const ProblemInstance& problem,
                           std::uint64_t norm_seed = 1u);

  // D^{-1} (X^T (X beta)).
  Eigen::VectorXd apply_A(const Eigen::VectorXd& beta) const;

  // X^T (X (D^{-1} tau)); the adjoint of apply_A.
  Eigen::VectorXd apply_At(const Eigen::VectorXd& tau) const;

  const Eigen::VectorXd& b() const { return b_; }
  double norm_estimate() const { return norm_estimate_; }

  // Estimate inflated by (1 + 1e-4) so a slight underestimate cannot break
  // the step condition lambda/alpha < 1/||A||^2.
  double guarded_norm() const { return norm_estimate_ * (1.0 + 1e-4); }

  const ProblemInstance& problem() const { return problem_; }
  Eigen::Index p() const { return problem_.p(); }

  // Number of rectangular matvecs performed so far (cost accounting).
  long matvec_count() const { return matvecs_.load(); }

 private:
  const ProblemInstance& problem_;
  Eigen::VectorXd b_;
  double norm_estimate_;
  mutable std::atomic<long> matvecs_{0};
};

// Power iteration on A^T A from a seeded random start; returns the square
// root of the Rayleigh quotient once its relative change drops below rel_tol.
// Throws ConvergenceFailure (carrying the best estimate) after max_iters.
double estimate_spectral_norm(const DantzigOperator& op, int max_iters,
                              double rel_tol, std::uint64_t seed);

}  // namespace dantzig
