#include "dantzig/problem.hpp"

#include "dantzig/errors.hpp"

namespace dantzig {

ProblemInstance from_design(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            double delta) {
  if (y.size() != X.rows())
    throw DimensionMismatch("len(y) = " + std::to_string(y.size()) +
                            " but X has " + std::to_string(X.rows()) + " rows");
  if (delta < 0.0) throw Error("delta must be >= 0");
  ProblemInstance problem;
  problem.X = X;
  problem.y = y;
  problem.delta = delta;
  problem.D.resize(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double norm = X.col(j).norm();
    if (norm == 0.0) throw ZeroColumn(static_cast<int>(j));
    problem.D(j) = norm;
  }
  validate_instance(problem);
  return problem;
}

void validate_instance(const ProblemInstance& problem) {
  if (problem.X.rows() < 1 || problem.X.cols() < 1)
    throw DimensionMismatch("design matrix must be at least 1x1");
  if (problem.y.size() != problem.X.rows())
    throw DimensionMismatch("observation length does not match design rows");
  if (problem.D.size() != problem.X.cols())
    throw DimensionMismatch("scale vector length does not match design columns");
  if (!(problem.D.array() > 0.0).all())
    throw Error("every entry of D must be > 0");
  if (problem.delta < 0.0) throw Error("delta must be >= 0");
}

void validate_config(const SolverConfig& cfg, double norm_estimate) {
  if (cfg.alpha <= 0.0) throw Error("alpha must be > 0");
  if (cfg.epsilon <= 0.0) throw Error("epsilon must be > 0");
  if (cfg.tol < 0.0) throw Error("tol must be >= 0");
  if (cfg.eta < 1) throw Error("eta must be >= 1");
  if (cfg.max_iters < 1) throw Error("max_iters must be >= 1");
  if (norm_estimate <= 0.0) throw Error("norm estimate must be > 0");
  if (cfg.lambda) {
    if (*cfg.lambda <= 0.0) throw Error("lambda must be > 0");
    const double ratio = *cfg.lambda / cfg.alpha;
    const double limit = 1.0 / (norm_estimate * norm_estimate);
    if (!(ratio < limit)) throw StepSizeTooLarge(ratio, limit);
  }
}

std::string to_string(Scheme scheme) {
  return scheme == Scheme::BetaFirst ? "beta-first" : "tau-first";
}

std::string to_string(Termination term) {
  switch (term) {
    case Termination::RelChange: return "rel_change";
    case Termination::SupportStationary: return "support_stationary";
    case Termination::MaxIters: return "max_iters";
  }
  return "unknown";
}

}  // namespace dantzig
