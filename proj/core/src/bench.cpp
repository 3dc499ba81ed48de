#include "dantzig/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "dantzig/csv.hpp"
#include "dantzig/errors.hpp"
#include "dantzig/fpsolver.hpp"
#include "dantzig/baselines.hpp"
#include "dantzig/linop.hpp"
#include "dantzig/oracle.hpp"
#include "dantzig/rng.hpp"

namespace dantzig {

Eigen::MatrixXd gen_design(int n, int p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw Error("gen_design: n, p must be >= 1");
  Rng rng(seed);
  Eigen::MatrixXd X(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = rng.next_normal();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = X.col(j).norm();
    if (norm > 0.0) X.col(j) /= norm;
  }
  return X;
}

SparseBeta gen_sparse_beta(int p, int s, std::uint64_t seed) {
  if (s < 1 || s > p) throw Error("gen_sparse_beta: need 1 <= s <= p");
  Rng rng(seed);
  // Partial Fisher-Yates for a uniform s-subset.
  std::vector<int> indices(static_cast<std::size_t>(p));
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < s; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(
                           static_cast<std::uint64_t>(p - i)));
    std::swap(indices[static_cast<std::size_t>(i)],
              indices[static_cast<std::size_t>(j)]);
  }
  SparseBeta out;
  out.support.assign(indices.begin(), indices.begin() + s);
  std::sort(out.support.begin(), out.support.end());
  out.beta = Eigen::VectorXd::Zero(p);
  for (int index : out.support) {
    const double sign = rng.next_sign();
    const double a = rng.next_normal();
    out.beta(index) = sign * (1.0 + std::abs(a));
  }
  return out;
}

Eigen::VectorXd gen_observations(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& beta, double sigma,
                                 std::uint64_t seed) {
  if (beta.size() != X.cols())
    throw DimensionMismatch("gen_observations: len(beta) != cols(X)");
  if (sigma < 0.0) throw Error("gen_observations: sigma must be >= 0");
  Eigen::VectorXd y = X * beta;
  if (sigma > 0.0) {
    Rng rng(seed);
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y(i) += sigma * rng.next_normal();
  }
  return y;
}

double accuracy_rho(const Eigen::VectorXd& beta_true,
                    const Eigen::VectorXd& beta_hat, double sigma) {
  if (beta_true.size() != beta_hat.size())
    throw DimensionMismatch("accuracy_rho: vector length mismatch");
  const double sigma_sq = sigma * sigma;
  double denom = 0.0;
  for (Eigen::Index j = 0; j < beta_true.size(); ++j)
    denom += std::min(beta_true(j) * beta_true(j), sigma_sq);
  if (denom == 0.0) throw DegenerateDenominator();
  return std::sqrt((beta_true - beta_hat).squaredNorm() / denom);
}

double default_delta(double sigma, int p) {
  if (sigma <= 0.0) throw Error("default_delta: sigma must be > 0");
  if (p < 2) throw Error("default_delta: p must be >= 2");
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(p)));
}

SolverConfig default_solver_params(double sigma, int p, double norm_estimate) {
  if (sigma <= 0.0) throw Error("default_solver_params: sigma must be > 0");
  if (p < 2) throw Error("default_solver_params: p must be >= 2");
  if (norm_estimate <= 0.0)
    throw Error("default_solver_params: norm estimate must be > 0");

  SolverConfig cfg;
  cfg.alpha = 0.2 * norm_estimate * norm_estimate;
  cfg.lambda = 0.999 * cfg.alpha / (norm_estimate * norm_estimate);
  cfg.tol = 2.0 * sigma;
  cfg.epsilon = 1e-4;
  const double eta_formula =
      std::ceil(4.0 * std::log(cfg.alpha) * std::log(sigma) + 2.0 * cfg.alpha);
  // The 2*alpha term can dwarf the iteration budget; cap the window at
  // max_iters/10 so the criterion stays live.
  double eta = std::max(eta_formula, 5.0);
  eta = std::min(eta, static_cast<double>(cfg.max_iters / 10));
  cfg.eta = static_cast<int>(eta);
  cfg.scheme = Scheme::TauFirst;
  cfg.postprocess = true;
  return cfg;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::FpSolver: return "fp";
    case Method::Adm: return "adm";
    case Method::Ladm: return "ladm";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "fp") return Method::FpSolver;
  if (name == "adm") return Method::Adm;
  if (name == "ladm") return Method::Ladm;
  throw Error("unknown method '" + name + "' (expected fp, adm, or ladm)");
}

namespace {

struct Cell {
  int m_index;
  int sigma_index;
  int replicate;
  Method method;
};

BenchRecord run_cell(const SweepConfig& cfg, const Cell& cell) {
  const int m = cfg.m_values[static_cast<std::size_t>(cell.m_index)];
  const double sigma = cfg.sigma_values[static_cast<std::size_t>(cell.sigma_index)];

  BenchRecord record;
  record.method = cell.method;
  record.m = m;
  record.sigma = sigma;
  record.replicate = cell.replicate;

  try {
    const int n = cfg.scale.n_per_m * m;
    const int p = cfg.scale.p_per_m * m;
    const int s = cfg.scale.s_per_m * m;

    // sigma enters seeding by index, not value, so float formatting can
    // never perturb the stream.
    const std::uint64_t child =
        Rng::mix(cfg.base_seed, static_cast<std::uint64_t>(m),
                 static_cast<std::uint64_t>(cell.sigma_index),
                 static_cast<std::uint64_t>(cell.replicate));
    const Eigen::MatrixXd X = gen_design(n, p, Rng::mix(child, 1));
    const SparseBeta truth = gen_sparse_beta(p, s, Rng::mix(child, 2));
    const Eigen::VectorXd y =
        gen_observations(X, truth.beta, sigma, Rng::mix(child, 3));
    const ProblemInstance problem = from_design(X, y, default_delta(sigma, p));

    const auto t0 = std::chrono::steady_clock::now();
    Eigen::VectorXd beta_raw, beta_post;
    switch (cell.method) {
      case Method::FpSolver: {
        DantzigOperator op(problem, Rng::mix(child, 4));
        SolverConfig solver_cfg =
            default_solver_params(sigma, p, op.guarded_norm());
        const SolveResult res = solve(op, solver_cfg);
        beta_raw = res.beta_raw;
        beta_post = res.beta_hat;
        record.iterations = res.iterations;
        record.termination = res.termination;
        break;
      }
      case Method::Adm: {
        const SolveResult res = adm_solve(problem, AdmConfig{});
        beta_raw = res.beta_raw;
        beta_post = stage2(problem, res.beta_raw, 2.0 * sigma).beta_hat;
        record.iterations = res.iterations;
        record.termination = res.termination;
        break;
      }
      case Method::Ladm: {
        const SolveResult res = ladm_solve(problem, LadmConfig{});
        beta_raw = res.beta_raw;
        beta_post = stage2(problem, res.beta_raw, 2.0 * sigma).beta_hat;
        record.iterations = res.iterations;
        record.termination = res.termination;
        break;
      }
    }
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    record.rho_raw = accuracy_rho(truth.beta, beta_raw, sigma);
    record.rho_post = accuracy_rho(truth.beta, beta_post, sigma);
    record.feasibility_violation = feasibility_violation(problem, beta_post);
  } catch (const std::exception& e) {
    record.failed = true;
    record.error = e.what();
  }
  return record;
}

bool record_order(const BenchRecord& a, const BenchRecord& b) {
  const auto key = [](const BenchRecord& r) {
    return std::make_tuple(static_cast<int>(r.method), r.m, r.sigma, r.replicate);
  };
  return key(a) < key(b);
}

}  // namespace

std::vector<BenchRecord> run_sweep(const SweepConfig& cfg) {
  if (cfg.methods.empty()) throw Error("run_sweep: methods must be nonempty");
  if (cfg.replicates < 1) throw Error("run_sweep: replicates must be >= 1");
  if (cfg.m_values.empty() || cfg.sigma_values.empty())
    throw Error("run_sweep: m and sigma lists must be nonempty");
  if (cfg.scale.n_per_m < 1 || cfg.scale.p_per_m < 1 || cfg.scale.s_per_m < 1)
    throw Error("run_sweep: scale components must be positive");

  std::vector<Cell> cells;
  for (std::size_t mi = 0; mi < cfg.m_values.size(); ++mi)
    for (std::size_t si = 0; si < cfg.sigma_values.size(); ++si)
      for (int rep = 0; rep < cfg.replicates; ++rep)
        for (Method method : cfg.methods)
          cells.push_back({static_cast<int>(mi), static_cast<int>(si), rep, method});

  std::vector<BenchRecord> records(cells.size());
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      records[i] = run_cell(cfg, cells[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        records[i] = run_cell(cfg, cells[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }

  std::sort(records.begin(), records.end(), record_order);
  return records;
}

std::vector<AggregateRecord> aggregate_records(
    const std::vector<BenchRecord>& records) {
  using Key = std::tuple<int, int, double>;  // method, m, sigma
  std::map<Key, std::vector<const BenchRecord*>> groups;
  for (const auto& record : records) {
    if (record.failed) continue;
    groups[{static_cast<int>(record.method), record.m, record.sigma}]
        .push_back(&record);
  }

  std::vector<AggregateRecord> aggregates;
  for (const auto& [key, group] : groups) {
    const std::vector<std::pair<std::string, double BenchRecord::*>> metrics = {
        {"rho_raw", &BenchRecord::rho_raw},
        {"rho_post", &BenchRecord::rho_post},
        {"wall_seconds", &BenchRecord::wall_seconds},
    };
    auto emit = [&](const std::string& metric, auto getter) {
      AggregateRecord agg;
      agg.method = static_cast<Method>(std::get<0>(key));
      agg.m = std::get<1>(key);
      agg.sigma = std::get<2>(key);
      agg.metric = metric;
      const double count = static_cast<double>(group.size());
      double mean = 0.0;
      for (const auto* r : group) mean += getter(*r);
      mean /= count;
      double variance = 0.0;
      if (group.size() > 1) {
        for (const auto* r : group) {
          const double d = getter(*r) - mean;
          variance += d * d;
        }
        variance /= (count - 1.0);
      }
      agg.mean = mean;
      agg.std_dev = std::sqrt(variance);
      aggregates.push_back(std::move(agg));
    };
    for (const auto& [name, member] : metrics)
      emit(name, [member](const BenchRecord& r) { return r.*member; });
    emit("iterations", [](const BenchRecord& r) {
      return static_cast<double>(r.iterations);
    });
  }
  return aggregates;
}

namespace {

std::string sanitize(const std::string& text) {
  std::string out = text;
  for (char& ch : out)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return out;
}

}  // namespace

void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "method,m,sigma,replicate,rho_raw,rho_post,iterations,wall_seconds,"
        "feas_violation,termination\n";
  for (const auto& r : records) {
    os << to_string(r.method) << ',' << r.m << ',' << format_double(r.sigma)
       << ',' << r.replicate << ',' << format_double(r.rho_raw) << ','
       << format_double(r.rho_post) << ',' << r.iterations << ','
       << format_double(r.wall_seconds) << ','
       << format_double(r.feasibility_violation) << ',';
    if (r.failed)
      os << "failed(" << sanitize(r.error) << ")";
    else
      os << to_string(r.termination);
    os << '\n';
  }
}

void write_aggregates_csv(std::ostream& os,
                          const std::vector<AggregateRecord>& aggregates) {
  os << "method,m,sigma,metric,mean,std\n";
  for (const auto& a : aggregates)
    os << to_string(a.method) << ',' << a.m << ',' << format_double(a.sigma)
       << ',' << a.metric << ',' << format_double(a.mean) << ','
       << format_double(a.std_dev) << '\n';
}

std::vector<BenchRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty records CSV: " + path);
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string token;
    std::vector<std::string> fields;
    while (std::getline(ss, token, ',')) fields.push_back(token);
    if (fields.size() != 10)
      throw Error("malformed records CSV row: " + line);
    BenchRecord r;
    r.method = method_from_string(fields[0]);
    r.m = static_cast<int>(parse_double(fields[1]));
    r.sigma = parse_double(fields[2]);
    r.replicate = static_cast<int>(parse_double(fields[3]));
    r.rho_raw = parse_double(fields[4]);
    r.rho_post = parse_double(fields[5]);
    r.iterations = static_cast<int>(parse_double(fields[6]));
    r.wall_seconds = parse_double(fields[7]);
    r.feasibility_violation = parse_double(fields[8]);
    const std::string& term = fields[9];
    if (term.rfind("failed", 0) == 0) {
      r.failed = true;
      r.error = term;
    } else if (term == "rel_change") {
      r.termination = Termination::RelChange;
    } else if (term == "support_stationary") {
      r.termination = Termination::SupportStationary;
    } else if (term == "max_iters") {
      r.termination = Termination::MaxIters;
    } else {
      throw Error("unknown termination '" + term + "'");
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace dantzig
