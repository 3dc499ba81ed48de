#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "dantzig/bench.hpp"
#include "dantzig/fpsolver.hpp"
#include "dantzig/linop.hpp"
#include "dantzig/prox.hpp"
#include "dantzig/problem.hpp"
#include "dantzig/rng.hpp"

namespace {

dantzig::ProblemInstance make_instance(int n, int p, double sigma = 0.05) {
  const Eigen::MatrixXd X = dantzig::gen_design(n, p, 1);
  const auto truth = dantzig::gen_sparse_beta(p, std::max(1, p / 32), 2);
  const Eigen::VectorXd y = dantzig::gen_observations(X, truth.beta, sigma, 3);
  return dantzig::from_design(X, y, dantzig::default_delta(sigma, p));
}

void BM_SoftThreshold(benchmark::State& state) {
  dantzig::Rng rng(5);
  Eigen::VectorXd u(state.range(0));
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.next_normal();
  for (auto _ : state) {
    Eigen::VectorXd out = dantzig::soft_threshold(u, 0.3);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SoftThreshold)->Range(256, 1 << 16);

void BM_ApplyA(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int n = (p * 9) / 32;  // the sweep defaults' n/p aspect ratio
  const auto problem = make_instance(n, p);
  dantzig::DantzigOperator op(problem);
  dantzig::Rng rng(6);
  Eigen::VectorXd beta(p);
  for (int i = 0; i < p; ++i) beta(i) = rng.next_normal();
  for (auto _ : state) {
    Eigen::VectorXd out = op.apply_A(beta);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 4l * n * p);  // flops
}
BENCHMARK(BM_ApplyA)->Arg(640)->Arg(1280)->Arg(2560);

void BM_Stage1Iteration(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int n = (p * 9) / 32;
  const auto problem = make_instance(n, p);
  dantzig::DantzigOperator op(problem);
  dantzig::SolverConfig cfg =
      dantzig::default_solver_params(0.05, p, op.guarded_norm());
  cfg.epsilon = 1e-300;  // never stop on the change criterion
  cfg.eta = 1 << 30;
  for (auto _ : state) {
    state.PauseTiming();
    cfg.max_iters = 50;
    state.ResumeTiming();
    const auto result = dantzig::stage1(op, cfg);
    benchmark::DoNotOptimize(result.beta_inf.data());
  }
  state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_Stage1Iteration)->Arg(640)->Arg(1280);

void BM_FullSolve(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int n = (p * 9) / 32;
  const auto problem = make_instance(n, p);
  for (auto _ : state) {
    dantzig::DantzigOperator op(problem);
    const auto cfg = dantzig::default_solver_params(0.05, p, op.guarded_norm());
    const auto result = dantzig::solve(op, cfg);
    benchmark::DoNotOptimize(result.beta_hat.data());
  }
}
BENCHMARK(BM_FullSolve)->Arg(640)->Arg(1280)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
