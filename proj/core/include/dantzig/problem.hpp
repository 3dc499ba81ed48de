#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace dantzig {

// The Dantzig selector program
//   min ||beta||_1  s.t.  ||D^{-1} X^T (X beta - y)||_inf <= delta,
// where D is diagonal with positive entries, stored as a vector.
struct ProblemInstance {
  Eigen::MatrixXd X;   // n x p design
  Eigen::VectorXd y;   // n observations
  Eigen::VectorXd D;   // p positive column scales (diagonal of D)
  double delta = 0.0;  // tube radius, >= 0 (0 means exact-fit constraint)

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index p() const { return X.cols(); }
};

// Builds an instance with D[j] = ||X[:,j]||_2. Throws ZeroColumn if some
// column has zero norm, DimensionMismatch if len(y) != rows(X).
ProblemInstance from_design(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            double delta);

// Validates field invariants of an already-populated instance.
void validate_instance(const ProblemInstance& problem);

// Which of the two coupled fixed-point orderings Stage-I runs.
// TauFirst is the ordering used by the two-stage algorithm's main loop;
// BetaFirst is the reflected variant.
enum class Scheme { BetaFirst, TauFirst };

enum class Termination { RelChange, SupportStationary, MaxIters };

std::string to_string(Scheme scheme);
std::string to_string(Termination term);

// Every knob of the two-stage solver. lambda is derived from alpha and the
// operator norm when not set explicitly; an explicit value is still validated
// against the step condition.
struct SolverConfig {
  double alpha = 1.0;                  // l1 prox parameter, > 0
  std::optional<double> lambda;        // default: 0.999 * alpha / ||A||^2
  double tol = 0.0;                    // Stage-II support threshold, >= 0
  double epsilon = 1e-4;               // relative-change stopping tolerance
  int eta = 5;                         // support-stationarity window, >= 1
  int max_iters = 50000;
  Scheme scheme = Scheme::TauFirst;
  bool postprocess = true;
};

// Throws StepSizeTooLarge unless lambda/alpha < 1/norm_estimate^2.
void validate_config(const SolverConfig& cfg, double norm_estimate);

struct SolveResult {
  Eigen::VectorXd beta_raw;   // Stage-I iterate beta_inf
  Eigen::VectorXd tau;        // Stage-I iterate tau_inf
  Eigen::VectorXd beta_hat;   // postprocessed estimator (== beta_raw if not)
  int iterations = 0;
  double wall_seconds = 0.0;
  Termination termination = Termination::MaxIters;
  double feasibility_violation = 0.0;  // max(0, ||D^-1 X^T (X bh - y)||_inf - delta)
  bool empty_support = false;  // Stage-II found no support; beta_hat = 0
};

}  // namespace dantzig
