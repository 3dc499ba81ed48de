#include "dantzig/linop.hpp"

#include <cmath>

#include "dantzig/errors.hpp"
#include "dantzig/rng.hpp"

namespace dantzig {

DantzigOperator::DantzigOperator(const ProblemInstance& problem,
                                 std::uint64_t norm_seed)
    : problem_(problem) {
  validate_instance(problem);
  b_ = (problem_.X.transpose() * problem_.y).cwiseQuotient(problem_.D);
  matvecs_.fetch_add(1);
  norm_estimate_ = 0.0;
  try {
    norm_estimate_ = estimate_spectral_norm(*this, 500, 1e-8, norm_seed);
  } catch (const ConvergenceFailure& failure) {
    // The quotient is still a valid lower estimate; the guard factor and the
    // 0.999 step margin absorb the residual error.
    norm_estimate_ = failure.best_estimate();
  }
}

Eigen::VectorXd DantzigOperator::apply_A(const Eigen::VectorXd& beta) const {
  if (beta.size() != problem_.p())
    throw DimensionMismatch("apply_A: len(beta) != p");
  Eigen::VectorXd t = problem_.X * beta;
  Eigen::VectorXd s = problem_.X.transpose() * t;
  matvecs_.fetch_add(2);
  return s.cwiseQuotient(problem_.D);
}

Eigen::VectorXd DantzigOperator::apply_At(const Eigen::VectorXd& tau) const {
  if (tau.size() != problem_.p())
    throw DimensionMismatch("apply_At: len(tau) != p");
  Eigen::VectorXd u = tau.cwiseQuotient(problem_.D);
  Eigen::VectorXd t = problem_.X * u;
  Eigen::VectorXd s = problem_.X.transpose() * t;
  matvecs_.fetch_add(2);
  return s;
}

double estimate_spectral_norm(const DantzigOperator& op, int max_iters,
                              double rel_tol, std::uint64_t seed) {
  if (max_iters < 1) throw Error("estimate_spectral_norm: max_iters must be >= 1");
  Rng rng(seed);
  Eigen::VectorXd v(op.p());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.next_normal();
  double vnorm = v.norm();
  if (vnorm == 0.0) { v.setOnes(); vnorm = v.norm(); }
  v /= vnorm;

  double quotient = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd w = op.apply_At(op.apply_A(v));  // A^T A v
    const double next_quotient = v.dot(w);           // Rayleigh quotient
    const double wnorm = w.norm();
    if (wnorm == 0.0) return 0.0;  // A = 0 on the start vector's cycle
    v = w / wnorm;
    const double change = std::abs(next_quotient - quotient);
    quotient = next_quotient;
    if (it > 0 && change <= rel_tol * std::abs(quotient))
      return std::sqrt(std::max(quotient, 0.0));
  }
  throw ConvergenceFailure("power iteration did not converge",
                           std::sqrt(std::max(quotient, 0.0)));
}

}  // namespace dantzig
