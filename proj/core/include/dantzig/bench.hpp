#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dantzig/problem.hpp"

namespace dantzig {

// Gaussian design with every column scaled to unit l2 norm.
Eigen::MatrixXd gen_design(int n, int p, std::uint64_t seed);

struct SparseBeta {
  Eigen::VectorXd beta;
  std::vector<int> support;  // sorted, size s
};

// Support of size s chosen uniformly at random; nonzeros eps_i * (1 + |a_i|)
// with a_i standard normal and eps_i uniform on {-1, +1}.
SparseBeta gen_sparse_beta(int p, int s, std::uint64_t seed);

// y = X beta + z with z iid normal(0, sigma^2).
Eigen::VectorXd gen_observations(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& beta, double sigma,
                                 std::uint64_t seed);

// rho = (||beta - beta_hat||_2^2 / sum_j min{beta_j^2, sigma^2})^{1/2};
// the denominator is the ideal estimator's expected mean squared error.
// Throws DegenerateDenominator when the denominator vanishes.
double accuracy_rho(const Eigen::VectorXd& beta_true,
                    const Eigen::VectorXd& beta_hat, double sigma);

// Tube radius rule delta = sigma * sqrt(2 ln p).
double default_delta(double sigma, int p);

// Synthetic-sweep parameter rule: tol = 2 sigma, alpha = 0.2 ||A||^2,
// epsilon = 1e-4,
// eta = max(ceil(4 ln(alpha) ln(sigma) + 2 alpha), 5) capped at max_iters/10,
// lambda = 0.999 alpha / ||A||^2. Logs are natural.
SolverConfig default_solver_params(double sigma, int p, double norm_estimate);

enum class Method { FpSolver, Adm, Ladm };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

struct SweepScale {
  int n_per_m = 720;
  int p_per_m = 2560;
  int s_per_m = 80;
};

struct SweepConfig {
  std::vector<int> m_values;
  std::vector<double> sigma_values;
  int replicates = 1;
  std::uint64_t base_seed = 0;
  std::vector<Method> methods;
  SweepScale scale;
  int jobs = 1;  // worker threads; cell results are scheduling-independent
};

struct BenchRecord {
  Method method;
  int m = 0;
  double sigma = 0.0;
  int replicate = 0;
  double rho_raw = 0.0;
  double rho_post = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
  double feasibility_violation = 0.0;
  Termination termination = Termination::MaxIters;
  bool failed = false;        // per-record failures never abort the sweep
  std::string error;
};

struct AggregateRecord {
  Method method;
  int m = 0;
  double sigma = 0.0;
  std::string metric;
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation, 0 when N < 2
};

// Runs every (m, sigma, replicate, method) cell. The same replicate always
// sees the same (X, beta, y) regardless of method: child seeds are a pure
// function of (base_seed, m, sigma index, replicate). Records come back
// sorted by (method, m, sigma, replicate).
std::vector<BenchRecord> run_sweep(const SweepConfig& cfg);

std::vector<AggregateRecord> aggregate_records(
    const std::vector<BenchRecord>& records);

// CSV emission. Raw header:
//   method,m,sigma,replicate,rho_raw,rho_post,iterations,wall_seconds,feas_violation,termination
// Aggregate header: method,m,sigma,metric,mean,std
void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& records);
void write_aggregates_csv(std::ostream& os,
                          const std::vector<AggregateRecord>& aggregates);
std::vector<BenchRecord> read_records_csv(const std::string& path);

}  // namespace dantzig
