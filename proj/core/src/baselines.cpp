#include "dantzig/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

#include "dantzig/errors.hpp"
#include "dantzig/linop.hpp"
#include "dantzig/oracle.hpp"
#include "dantzig/prox.hpp"

namespace dantzig {

namespace {

constexpr double kBbStepMin = 1e-10;
constexpr double kBbStepMax = 1e10;
constexpr double kSufficientDecrease = 1e-4;
constexpr int kMaxBacktracks = 60;

void require_unit_scaling(const ProblemInstance& problem) {
  for (Eigen::Index j = 0; j < problem.D.size(); ++j)
    if (std::abs(problem.D(j) - 1.0) > 1e-12) throw RequiresUnitScaling();
}

double outer_relative_change(const Eigen::VectorXd& next,
                             const Eigen::VectorXd& prev) {
  return (next - prev).norm() / std::max(1.0, prev.norm());
}

// The beta-change rule alone can fire on the first outer iteration while the
// multipliers are still moving (beta = 0 can genuinely minimize the first
// subproblem), so stationarity of the constraint X^T(X beta - y) = tau is
// required as well.
bool outer_converged(const Eigen::VectorXd& beta, const Eigen::VectorXd& beta_prev,
                     const Eigen::VectorXd& xtx_residual, const Eigen::VectorXd& tau,
                     double tol) {
  if (outer_relative_change(beta, beta_prev) >= tol) return false;
  const double constraint =
      (xtx_residual - tau).norm() / std::max(1.0, tau.norm());
  return constraint < tol;
}

// Approximately minimizes ||beta||_1 + (c/2) ||X^T (X beta - y) - w||_2^2
// from a warm start, using BB steps with nonmonotone acceptance over the
// last `memory` objective values. Returns the number of inner iterations.
int solve_beta_subproblem(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& w, double c,
                          const AdmConfig& cfg, Eigen::VectorXd& beta) {
  auto h_of = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return X.transpose() * (X * v - y) - w;
  };
  auto objective = [&](const Eigen::VectorXd& v, const Eigen::VectorXd& h) {
    return v.lpNorm<1>() + 0.5 * c * h.squaredNorm();
  };

  Eigen::VectorXd h = h_of(beta);
  Eigen::VectorXd grad = c * (X.transpose() * (X * h));
  double f_current = objective(beta, h);

  std::deque<double> recent{f_current};
  double step = 1.0;
  Eigen::VectorXd beta_old, grad_old;

  int inner = 0;
  for (; inner < cfg.inner_max_iters; ++inner) {
    // Unit-step proximal-gradient residual, scaled by the iterate size.
    const double residual =
        (beta - soft_threshold(beta - grad, 1.0)).norm();
    if (residual <= cfg.inner_tol * (1.0 + beta.norm())) break;

    if (inner > 0) {
      const Eigen::VectorXd d_beta = beta - beta_old;
      const Eigen::VectorXd d_grad = grad - grad_old;
      const double denom = d_beta.dot(d_grad);
      step = denom > 0.0 ? d_beta.squaredNorm() / denom : kBbStepMax;
      step = std::min(std::max(step, kBbStepMin), kBbStepMax);
    }

    const double f_max = *std::max_element(recent.begin(), recent.end());
    Eigen::VectorXd candidate, h_candidate;
    double f_candidate = 0.0;
    double s = step;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      candidate = soft_threshold(beta - s * grad, s);
      h_candidate = h_of(candidate);
      f_candidate = objective(candidate, h_candidate);
      const double decrease =
          kSufficientDecrease * (candidate - beta).squaredNorm() / (2.0 * s);
      if (f_candidate <= f_max - decrease) break;
      s *= 0.5;
    }

    beta_old = beta;
    grad_old = grad;
    beta = candidate;
    h = h_candidate;
    grad = c * (X.transpose() * (X * h));
    f_current = f_candidate;
    recent.push_back(f_current);
    if (static_cast<int>(recent.size()) > cfg.nonmonotone_memory)
      recent.pop_front();
  }
  return inner;
}

void validate_adm_config(const AdmConfig& cfg) {
  if (cfg.c <= 0.0 || cfg.inner_tol <= 0.0 || cfg.outer_tol <= 0.0)
    throw Error("ADM parameters must be positive");
  if (cfg.inner_max_iters < 1 || cfg.outer_max_iters < 1 ||
      cfg.nonmonotone_memory < 1)
    throw Error("ADM iteration parameters must be >= 1");
}

}  // namespace

SolveResult adm_solve(const ProblemInstance& problem, const AdmConfig& cfg,
                      const OuterObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  validate_instance(problem);
  validate_adm_config(cfg);
  require_unit_scaling(problem);

  const Eigen::MatrixXd& X = problem.X;
  const Eigen::VectorXd& y = problem.y;
  const double c = cfg.c;
  const Eigen::Index p = problem.p();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd gamma_prev = gamma;

  int total_inner = 0;
  Termination termination = Termination::MaxIters;

  for (int k = 0; k < cfg.outer_max_iters; ++k) {
    Eigen::VectorXd xtx_residual = X.transpose() * (X * beta - y);
    tau = xtx_residual + gamma / c;
    clamp_inf_ball_inplace(tau, problem.delta);

    const Eigen::VectorXd beta_prev = beta;
    const Eigen::VectorXd w = tau - gamma / c;
    total_inner += solve_beta_subproblem(X, y, w, c, cfg, beta);

    xtx_residual = X.transpose() * (X * beta - y);
    gamma_prev = gamma;
    gamma = gamma_prev + c * (xtx_residual - tau);

    if (observer)
      observer({k + 1, beta, tau, gamma, gamma_prev, xtx_residual});

    if (outer_converged(beta, beta_prev, xtx_residual, tau, cfg.outer_tol)) {
      termination = Termination::RelChange;
      break;
    }
  }

  SolveResult result;
  result.beta_raw = beta;
  result.tau = tau;
  result.beta_hat = beta;
  result.iterations = total_inner;
  result.termination = termination;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  result.feasibility_violation = feasibility_violation(problem, beta);
  return result;
}

SolveResult ladm_solve(const ProblemInstance& problem, const LadmConfig& cfg,
                       const OuterObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  validate_instance(problem);
  if (cfg.c <= 0.0 || cfg.tol <= 0.0) throw Error("LADM parameters must be positive");
  if (cfg.max_iters < 1) throw Error("LADM max_iters must be >= 1");
  require_unit_scaling(problem);

  // With D = I the Dantzig operator is X^T X itself, so its norm estimate
  // doubles as the ||X^T X||_2 estimate entering the ell condition.
  DantzigOperator op(problem);
  const double xtx_norm = op.guarded_norm();
  const double required = 2.0 * xtx_norm * xtx_norm;
  double ell = cfg.ell;
  if (ell <= 0.0) {
    ell = 2.001 * xtx_norm * xtx_norm;
  } else if (!(ell > required)) {
    throw EllTooSmall(ell, required);
  }

  const Eigen::MatrixXd& X = problem.X;
  const Eigen::VectorXd& y = problem.y;
  const double c = cfg.c;
  const Eigen::Index p = problem.p();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd gamma_prev = gamma;

  int iterations = 0;
  Termination termination = Termination::MaxIters;

  for (int k = 0; k < cfg.max_iters; ++k) {
    // v^k = X^T X (X^T (X beta^k - y) - tau^k + gamma^k / c)
    Eigen::VectorXd inner = X.transpose() * (X * beta - y) - tau + gamma / c;
    Eigen::VectorXd v = X.transpose() * (X * inner);

    const Eigen::VectorXd beta_prev = beta;
    beta = soft_threshold(beta - (c / ell) * v, 1.0 / ell);

    Eigen::VectorXd xtx_residual = X.transpose() * (X * beta - y);
    tau = xtx_residual + gamma / c;
    clamp_inf_ball_inplace(tau, problem.delta);

    gamma_prev = gamma;
    gamma = gamma_prev + c * (xtx_residual - tau);
    ++iterations;

    if (observer)
      observer({k + 1, beta, tau, gamma, gamma_prev, xtx_residual});

    if (outer_converged(beta, beta_prev, xtx_residual, tau, cfg.tol)) {
      termination = Termination::RelChange;
      break;
    }
  }

  SolveResult result;
  result.beta_raw = beta;
  result.tau = tau;
  result.beta_hat = beta;
  result.iterations = iterations;
  result.termination = termination;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  result.feasibility_violation = feasibility_violation(problem, beta);
  return result;
}

}  // namespace dantzig
