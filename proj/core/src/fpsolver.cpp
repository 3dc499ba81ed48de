#include "dantzig/fpsolver.hpp"

#include <chrono>
#include <cmath>

#include "dantzig/errors.hpp"
#include "dantzig/oracle.hpp"
#include "dantzig/prox.hpp"

namespace dantzig {

std::uint64_t support_fingerprint(const Eigen::VectorXd& beta) {
  std::uint64_t hash = 1469598103934665603ULL;  // FNV offset basis
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    if (beta(i) == 0.0) continue;
    std::uint64_t v = static_cast<std::uint64_t>(i);
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (v >> (8 * byte)) & 0xffu;
      hash *= 1099511628211ULL;  // FNV prime
    }
  }
  return hash;
}

StopDecision check_stop(const IterationTrace& trace, const SolverConfig& cfg) {
  if (trace.records.empty()) throw Error("check_stop: empty trace");
  const auto& last = trace.records.back();
  if (last.rel_change < cfg.epsilon) return {true, Termination::RelChange};
  const int window = cfg.eta + 1;
  if (static_cast<int>(trace.records.size()) >= window) {
    bool stationary = true;
    const std::size_t end = trace.records.size();
    for (std::size_t i = end - static_cast<std::size_t>(window); i + 1 < end; ++i) {
      if (trace.records[i].support_hash != last.support_hash ||
          trace.records[i].support_size != last.support_size) {
        stationary = false;
        break;
      }
    }
    if (stationary) return {true, Termination::SupportStationary};
  }
  return {false, Termination::MaxIters};
}

namespace {

// Relative change of the coupled pair: max over beta and tau of
// ||next - prev||_2 / ||prev||_2, falling back to the absolute change when a
// denominator is zero. Watching beta alone stalls the criterion whenever the
// soft threshold freezes beta (cold start, dead-zone plateaus) while tau is
// still far from its fixed point.
double pair_relative_change(const Eigen::VectorXd& beta_next,
                            const Eigen::VectorXd& beta_prev,
                            const Eigen::VectorXd& tau_next,
                            const Eigen::VectorXd& tau_prev) {
  const auto one = [](const Eigen::VectorXd& next, const Eigen::VectorXd& prev) {
    const double denom = prev.norm();
    const double change = (next - prev).norm();
    return denom > 0.0 ? change / denom : change;
  };
  return std::max(one(beta_next, beta_prev), one(tau_next, tau_prev));
}

double resolve_lambda(const SolverConfig& cfg, const DantzigOperator& op) {
  if (cfg.lambda) return *cfg.lambda;
  const double g = op.guarded_norm();
  return 0.999 * cfg.alpha / (g * g);
}

}  // namespace

Stage1Result stage1(const DantzigOperator& op, const SolverConfig& cfg) {
  const double lambda = resolve_lambda(cfg, op);
  {
    SolverConfig resolved = cfg;
    resolved.lambda = lambda;
    validate_config(resolved, op.guarded_norm());
  }

  const Eigen::Index p = op.p();
  const double step = lambda / cfg.alpha;
  const double l1_thresh = 1.0 / cfg.alpha;
  const double delta = op.problem().delta;
  const Eigen::VectorXd& b = op.b();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd beta_prev = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd tau_prev = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd extrapolated(p), applied(p), candidate(p);

  Stage1Result result;
  result.trace.records.reserve(64);
  result.trace.termination = Termination::MaxIters;

  for (int k = 0; k < cfg.max_iters; ++k) {
    double rel = 0.0;
    if (cfg.scheme == Scheme::TauFirst) {
      extrapolated = 2.0 * beta - beta_prev;
      applied = op.apply_A(extrapolated);
      candidate = applied + tau - b;
      soft_threshold_inplace(candidate, delta);
      tau_prev.swap(tau);
      tau.swap(candidate);  // tau^{k+1}

      applied = op.apply_At(tau);
      candidate = beta - step * applied;
      soft_threshold_inplace(candidate, l1_thresh);
      rel = pair_relative_change(candidate, beta, tau, tau_prev);
      beta_prev.swap(beta);
      beta.swap(candidate);  // beta^{k+1}
    } else {
      extrapolated = 2.0 * tau - tau_prev;
      applied = op.apply_At(extrapolated);
      candidate = beta - step * applied;
      soft_threshold_inplace(candidate, l1_thresh);

      applied = op.apply_A(candidate);
      applied += tau - b;
      soft_threshold_inplace(applied, delta);  // tau^{k+1}
      rel = pair_relative_change(candidate, beta, applied, tau);
      beta_prev.swap(beta);
      beta.swap(candidate);  // beta^{k+1}
      tau_prev.swap(tau);
      tau.swap(applied);  // tau^{k+1}
    }

    result.trace.records.push_back({k + 1, rel, support_fingerprint(beta),
                                    static_cast<int>((beta.array() != 0.0).count())});
    const StopDecision decision = check_stop(result.trace, cfg);
    if (decision.stop) {
      result.trace.termination = decision.reason;
      break;
    }
  }

  result.beta_inf = std::move(beta);
  result.tau_inf = std::move(tau);
  return result;
}

std::vector<int> estimate_support(const Eigen::VectorXd& beta_inf, double tol) {
  if (tol < 0.0) throw Error("estimate_support: tol must be >= 0");
  std::vector<int> support;
  for (Eigen::Index j = 0; j < beta_inf.size(); ++j)
    if (std::abs(beta_inf(j)) > tol) support.push_back(static_cast<int>(j));
  if (support.empty()) throw EmptySupport();
  return support;
}

Stage2Result stage2(const ProblemInstance& problem,
                    const Eigen::VectorXd& beta_inf, double tol) {
  if (beta_inf.size() != problem.p())
    throw DimensionMismatch("stage2: len(beta_inf) != p");
  Stage2Result result;
  std::vector<int> support;
  try {
    support = estimate_support(beta_inf, tol);
  } catch (const EmptySupport&) {
    result.beta_hat = Eigen::VectorXd::Zero(problem.p());
    result.empty_support = true;
    return result;
  }

  Eigen::MatrixXd X_sub(problem.n(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c)
    X_sub.col(static_cast<Eigen::Index>(c)) = problem.X.col(support[c]);

  // Column-pivoted orthogonal factorization; minimum-norm solution when the
  // submatrix is rank-deficient at relative pivot threshold 1e-10.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(X_sub.rows(),
                                                              X_sub.cols());
  cod.setThreshold(1e-10);
  cod.compute(X_sub);
  Eigen::VectorXd restricted = cod.solve(problem.y);

  result.beta_hat = Eigen::VectorXd::Zero(problem.p());
  for (std::size_t c = 0; c < support.size(); ++c)
    result.beta_hat(support[c]) = restricted(static_cast<Eigen::Index>(c));
  return result;
}

namespace {

SolveResult assemble(const DantzigOperator& op, const SolverConfig& cfg,
                     std::chrono::steady_clock::time_point start) {
  Stage1Result s1 = stage1(op, cfg);
  SolveResult result;
  result.beta_raw = std::move(s1.beta_inf);
  result.tau = std::move(s1.tau_inf);
  result.iterations = s1.trace.iterations();
  result.termination = s1.trace.termination;
  if (cfg.postprocess) {
    Stage2Result s2 = stage2(op.problem(), result.beta_raw, cfg.tol);
    result.beta_hat = std::move(s2.beta_hat);
    result.empty_support = s2.empty_support;
  } else {
    result.beta_hat = result.beta_raw;
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  result.feasibility_violation =
      feasibility_violation(op.problem(), result.beta_hat);
  return result;
}

}  // namespace

SolveResult solve(const ProblemInstance& problem, const SolverConfig& cfg,
                  std::uint64_t norm_seed) {
  const auto start = std::chrono::steady_clock::now();
  DantzigOperator op(problem, norm_seed);
  return assemble(op, cfg, start);
}

SolveResult solve(const DantzigOperator& op, const SolverConfig& cfg) {
  return assemble(op, cfg, std::chrono::steady_clock::now());
}

}  // namespace dantzig
