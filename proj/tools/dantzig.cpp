// Command-line front end for the Dantzig selector toolkit.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dantzig/baselines.hpp"
#include "dantzig/bench.hpp"
#include "dantzig/classify.hpp"
#include "dantzig/csv.hpp"
#include "dantzig/errors.hpp"
#include "dantzig/fpsolver.hpp"
#include "dantzig/linop.hpp"
#include "dantzig/oracle.hpp"
#include "dantzig/problem.hpp"
#include "dantzig/rng.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

int default_jobs() {
  if (const char* env = std::getenv("DANTZIG_JOBS")) {
    try {
      const int jobs = std::stoi(env);
      if (jobs >= 1) return jobs;
    } catch (...) {
    }
    std::cerr << "warning: ignoring malformed DANTZIG_JOBS='" << env << "'\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      values.push_back(dantzig::parse_double(token));
    } catch (const std::exception&) {
      throw dantzig::Error("malformed value '" + token + "' in " + flag);
    }
  }
  if (values.empty()) throw dantzig::Error(flag + " must be a nonempty list");
  return values;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  for (double v : parse_double_list(text, flag)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw dantzig::Error(flag + " expects integers, got " +
                           dantzig::format_double(v));
    values.push_back(i);
  }
  return values;
}

struct SolveOptions {
  std::string x_path, y_path;
  double delta = 0.0;
  double alpha = 0.0;       // 0: derive 0.2 * ||A||^2
  double lambda = 0.0;      // 0: derive 0.999 * alpha / ||A||^2
  double tol = 0.0;
  double epsilon = 1e-4;
  int eta = 5;
  int max_iters = 50000;
  std::string scheme = "tau-first";
  bool no_postprocess = false;
  std::string out_path;
  std::uint64_t seed = 1;
};

int run_solve(const SolveOptions& opt) {
  dantzig::ProblemInstance problem;
  try {
    const Eigen::MatrixXd X = dantzig::read_matrix_csv(opt.x_path);
    const Eigen::VectorXd y = dantzig::read_vector_csv(opt.y_path);
    if (opt.delta < 0.0) throw dantzig::Error("--delta must be >= 0");
    problem = dantzig::from_design(X, y, opt.delta);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << " (check --x/--y/--delta)\n";
    return kExitUsage;
  }

  try {
    dantzig::DantzigOperator op(problem, opt.seed);

    dantzig::SolverConfig cfg;
    cfg.alpha = opt.alpha > 0.0
                    ? opt.alpha
                    : 0.2 * op.guarded_norm() * op.guarded_norm();
    if (opt.lambda > 0.0) cfg.lambda = opt.lambda;
    cfg.tol = opt.tol;
    cfg.epsilon = opt.epsilon;
    cfg.eta = opt.eta;
    cfg.max_iters = opt.max_iters;
    cfg.postprocess = !opt.no_postprocess;
    if (opt.scheme == "beta-first") {
      cfg.scheme = dantzig::Scheme::BetaFirst;
    } else if (opt.scheme == "tau-first") {
      cfg.scheme = dantzig::Scheme::TauFirst;
    } else {
      std::cerr << "error: --scheme must be beta-first or tau-first\n";
      return kExitUsage;
    }

    try {
      dantzig::validate_config(cfg, op.guarded_norm());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what()
                << " (check --alpha/--lambda against the data)\n";
      return kExitUsage;
    }

    const dantzig::SolveResult result = dantzig::solve(op, cfg);
    if (!opt.out_path.empty())
      dantzig::write_vector_csv(opt.out_path, result.beta_hat);

    json summary;
    summary["schema"] = 1;
    summary["command"] = "solve";
    summary["iterations"] = result.iterations;
    summary["seconds"] = result.wall_seconds;
    summary["termination"] = dantzig::to_string(result.termination);
    summary["beta_l1"] = result.beta_hat.lpNorm<1>();
    summary["feasibility_violation"] = result.feasibility_violation;
    summary["empty_support"] = result.empty_support;
    std::cout << summary.dump() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

struct BenchOptions {
  std::string m_list = "1";
  std::string sigma_list = "0.05";
  int reps = 1;
  std::uint64_t seed = 0;
  std::string methods = "fp,adm";
  std::string out_dir = ".";
  std::string scale;
  int jobs = 0;
};

int run_bench(const BenchOptions& opt) {
  dantzig::SweepConfig cfg;
  try {
    cfg.m_values = parse_int_list(opt.m_list, "--m-list");
    cfg.sigma_values = parse_double_list(opt.sigma_list, "--sigma-list");
    cfg.replicates = opt.reps;
    if (cfg.replicates < 1) throw dantzig::Error("--reps must be >= 1");
    cfg.base_seed = opt.seed;
    std::stringstream ss(opt.methods);
    std::string token;
    while (std::getline(ss, token, ','))
      cfg.methods.push_back(dantzig::method_from_string(token));
    if (cfg.methods.empty()) throw dantzig::Error("--methods must be nonempty");
    if (!opt.scale.empty()) {
      const auto parts = parse_int_list(opt.scale, "--scale");
      if (parts.size() != 3)
        throw dantzig::Error("--scale expects n,p,s (three integers)");
      cfg.scale = {parts[0], parts[1], parts[2]};
    }
    cfg.jobs = opt.jobs > 0 ? opt.jobs : default_jobs();
    std::filesystem::create_directories(opt.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const auto records = dantzig::run_sweep(cfg);
    const auto aggregates = dantzig::aggregate_records(records);

    const auto records_path =
        (std::filesystem::path(opt.out_dir) / "records.csv").string();
    const auto aggregate_path =
        (std::filesystem::path(opt.out_dir) / "aggregate.csv").string();
    {
      std::ofstream out(records_path);
      if (!out) throw dantzig::Error("cannot write " + records_path);
      dantzig::write_records_csv(out, records);
    }
    {
      std::ofstream out(aggregate_path);
      if (!out) throw dantzig::Error("cannot write " + aggregate_path);
      dantzig::write_aggregates_csv(out, aggregates);
    }

    int failed = 0;
    for (const auto& record : records)
      if (record.failed) ++failed;

    // Record every parameter the sweep ran with, including the baked-in
    // solver recipes, next to the data.
    const auto params_path =
        (std::filesystem::path(opt.out_dir) / "params.json").string();
    {
      json params;
      params["schema"] = 1;
      params["m_values"] = cfg.m_values;
      params["sigma_values"] = cfg.sigma_values;
      params["replicates"] = cfg.replicates;
      params["base_seed"] = cfg.base_seed;
      std::vector<std::string> method_names;
      for (const auto method : cfg.methods)
        method_names.push_back(dantzig::to_string(method));
      params["methods"] = method_names;
      params["scale"] = {cfg.scale.n_per_m, cfg.scale.p_per_m, cfg.scale.s_per_m};
      params["jobs"] = cfg.jobs;
      params["fp"] = {{"tol", "2*sigma"},
                      {"alpha", "0.2*||A||^2"},
                      {"delta", "sigma*sqrt(2*ln p)"},
                      {"epsilon", 1e-4},
                      {"eta", "max(ceil(4*ln(alpha)*ln(sigma)+2*alpha),5), capped at max_iters/10"},
                      {"lambda", "0.999*alpha/||A||^2"},
                      {"scheme", "tau-first"}};
      const dantzig::AdmConfig adm;
      params["adm"] = {{"c", adm.c},
                       {"inner_max_iters", adm.inner_max_iters},
                       {"inner_tol", adm.inner_tol},
                       {"outer_max_iters", adm.outer_max_iters},
                       {"outer_tol", adm.outer_tol},
                       {"nonmonotone_memory", adm.nonmonotone_memory},
                       {"stage2_tol", "2*sigma"}};
      const dantzig::LadmConfig ladm;
      params["ladm"] = {{"c", ladm.c},
                        {"ell", "2.001*||X^T X||^2"},
                        {"max_iters", ladm.max_iters},
                        {"tol", ladm.tol},
                        {"stage2_tol", "2*sigma"}};
      std::ofstream out(params_path);
      if (!out) throw dantzig::Error("cannot write " + params_path);
      out << params.dump(2) << "\n";
    }

    json summary;
    summary["schema"] = 1;
    summary["command"] = "bench";
    summary["records"] = records.size();
    summary["failed"] = failed;
    summary["records_csv"] = records_path;
    summary["aggregate_csv"] = aggregate_path;
    summary["params_json"] = params_path;
    summary["jobs"] = cfg.jobs;
    std::cout << summary.dump() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "bench failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

struct ClassifyOptions {
  std::string train_x, train_y, test_x, test_y;
  int n_top = 1000;
  std::string delta_list = "0.0625,0.125,0.1875,0.25,0.3125,0.375";
  double alpha = 0.0;  // 0: ||X~^T X~||^2 estimate
  double tol = 0.1;
  double epsilon = 1e-4;
  int eta = 80;
  int max_iters = 50000;
  bool postprocess = false;
  std::string out_path = "classify_results.csv";
  std::string emit_raw;
};

std::vector<int> read_label_csv(const std::string& path) {
  const Eigen::VectorXd values = dantzig::read_vector_csv(path);
  std::vector<int> labels(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) != 0.0 && values(i) != 1.0)
      throw dantzig::Error("labels in " + path + " must be 0 or 1");
    labels[static_cast<std::size_t>(i)] = static_cast<int>(values(i));
  }
  return labels;
}

int run_classify(const ClassifyOptions& opt) {
  std::vector<double> deltas;
  Eigen::MatrixXd test_features;
  std::vector<int> test_labels;
  std::unique_ptr<dantzig::LabeledDataset> train;
  std::vector<int> selection;
  try {
    deltas = parse_double_list(opt.delta_list, "--delta-list");
    Eigen::MatrixXd train_features = dantzig::read_matrix_csv(opt.train_x);
    const auto train_labels = read_label_csv(opt.train_y);
    test_features = dantzig::read_matrix_csv(opt.test_x);
    test_labels = read_label_csv(opt.test_y);

    if (test_features.cols() != train_features.cols())
      throw dantzig::DimensionMismatch(
          "--test-x column count differs from --train-x");
    if (static_cast<Eigen::Index>(test_labels.size()) != test_features.rows())
      throw dantzig::DimensionMismatch(
          "--test-y length differs from --test-x rows");

    train = std::make_unique<dantzig::LabeledDataset>(std::move(train_features),
                                                      train_labels);
    selection = dantzig::select_top_variance(*train, opt.n_top);

    // Prediction runs against unit-normalized test columns, mirroring the
    // training normalization.
    for (Eigen::Index j = 0; j < test_features.cols(); ++j) {
      const double norm = test_features.col(j).norm();
      if (norm > 0.0) test_features.col(j) /= norm;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    dantzig::SolverConfig cfg;
    cfg.tol = opt.tol;
    cfg.epsilon = opt.epsilon;
    cfg.eta = opt.eta;
    cfg.max_iters = opt.max_iters;
    cfg.postprocess = opt.postprocess;
    if (opt.alpha > 0.0) {
      cfg.alpha = opt.alpha;
    } else {
      // alpha = ||X~^T X~||_2^2 on the reduced training matrix.
      Eigen::MatrixXd reduced(train->rows(),
                              static_cast<Eigen::Index>(selection.size()));
      for (std::size_t c = 0; c < selection.size(); ++c)
        reduced.col(static_cast<Eigen::Index>(c)) =
            train->features().col(selection[c]);
      dantzig::ProblemInstance probe;
      probe.X = std::move(reduced);
      probe.y = train->labels_as_vector();
      probe.D =
          Eigen::VectorXd::Ones(static_cast<Eigen::Index>(selection.size()));
      probe.delta = 0.0;
      dantzig::DantzigOperator op(probe);
      cfg.alpha = op.guarded_norm() * op.guarded_norm();
    }

    std::ofstream out(opt.out_path);
    if (!out) throw dantzig::Error("cannot write " + opt.out_path);
    out << "delta,misdiagnoses,iterations,wall_seconds\n";

    Eigen::MatrixXd raw_values(test_features.rows(),
                               static_cast<Eigen::Index>(deltas.size()));
    int best_misdiagnoses = -1;
    double best_delta = deltas.front();
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      dantzig::SolveResult details;
      const Eigen::VectorXd beta_hat =
          dantzig::train_reduced(*train, selection, deltas[d], cfg, &details);
      const auto prediction = dantzig::predict_labels(test_features, beta_hat);
      const int errors =
          dantzig::misdiagnosis_count(prediction.labels, test_labels);
      raw_values.col(static_cast<Eigen::Index>(d)) = prediction.y_raw;
      out << dantzig::format_double(deltas[d]) << ',' << errors << ','
          << details.iterations << ','
          << dantzig::format_double(details.wall_seconds) << '\n';
      if (best_misdiagnoses < 0 || errors < best_misdiagnoses) {
        best_misdiagnoses = errors;
        best_delta = deltas[d];
      }
    }
    out.close();
    if (!opt.emit_raw.empty())
      dantzig::write_matrix_csv(opt.emit_raw, raw_values);

    json summary;
    summary["schema"] = 1;
    summary["command"] = "classify";
    summary["deltas"] = deltas.size();
    summary["n_top"] = opt.n_top;
    summary["best_delta"] = best_delta;
    summary["best_misdiagnoses"] = best_misdiagnoses;
    summary["out_csv"] = opt.out_path;
    std::cout << summary.dump() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "classify failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

struct OracleCheckOptions {
  int n = 12;
  int p = 8;
  double delta = 0.2;
  std::uint64_t seed = 0;
  int trials = 100;
  double sigma = 0.05;
  int s = 0;  // 0: max(1, p/4)
};

int run_oracle_check(const OracleCheckOptions& opt) {
  if (opt.trials < 1) {
    std::cerr << "error: --trials must be >= 1\n";
    return kExitUsage;
  }
  if (opt.n < 1 || opt.n > 24 || opt.p < 1 || opt.p > 24) {
    std::cerr << "error: the LP oracle caps at --n, --p <= 24\n";
    return kExitUsage;
  }
  if (opt.delta < 0.0 || opt.sigma < 0.0) {
    std::cerr << "error: --delta and --sigma must be >= 0\n";
    return kExitUsage;
  }
  const int s = opt.s > 0 ? opt.s : std::max(1, opt.p / 4);
  if (s > opt.p) {
    std::cerr << "error: --s must be <= --p\n";
    return kExitUsage;
  }

  try {
    double max_gap = 0.0;
    double max_violation = 0.0;
    std::uint64_t failing_seed = 0;
    bool pass = true;

    for (int trial = 0; trial < opt.trials; ++trial) {
      const std::uint64_t child =
          dantzig::Rng::mix(opt.seed, static_cast<std::uint64_t>(trial));
      const Eigen::MatrixXd X =
          dantzig::gen_design(opt.n, opt.p, dantzig::Rng::mix(child, 1));
      const auto truth =
          dantzig::gen_sparse_beta(opt.p, s, dantzig::Rng::mix(child, 2));
      const Eigen::VectorXd y = dantzig::gen_observations(
          X, truth.beta, opt.sigma, dantzig::Rng::mix(child, 3));
      const auto problem = dantzig::from_design(X, y, opt.delta);

      const auto lp = dantzig::lp_reference_solve(problem);

      dantzig::DantzigOperator op(problem, dantzig::Rng::mix(child, 4));
      dantzig::SolverConfig cfg;
      cfg.alpha = 0.2 * op.guarded_norm() * op.guarded_norm();
      cfg.epsilon = 1e-10;
      cfg.eta = 1 << 30;
      cfg.max_iters = 500000;
      cfg.postprocess = false;
      const auto result = dantzig::solve(op, cfg);

      const double gap = std::abs(result.beta_raw.lpNorm<1>() - lp.objective);
      const double violation =
          dantzig::feasibility_violation(problem, result.beta_raw);
      if (gap > max_gap) max_gap = gap;
      if (violation > max_violation) max_violation = violation;
      if ((gap > 1e-4 || violation > 1e-6) && pass) {
        pass = false;
        failing_seed = child;
      }
    }

    json summary;
    summary["schema"] = 1;
    summary["command"] = "oracle-check";
    summary["trials"] = opt.trials;
    summary["max_objective_gap"] = max_gap;
    summary["max_feasibility_violation"] = max_violation;
    summary["pass"] = pass;
    if (!pass) summary["failing_seed"] = failing_seed;
    std::cout << summary.dump() << "\n";
    if (!pass) {
      std::cerr << "oracle-check failed: seed " << failing_seed
                << " exceeded tolerances\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "oracle-check failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dantzig selector solver toolkit"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  auto* solve_cmd =
      app.add_subcommand("solve", "Solve one Dantzig selector problem");
  solve_cmd->add_option("--x", solve_opt.x_path, "Design matrix CSV")->required();
  solve_cmd->add_option("--y", solve_opt.y_path, "Observation vector CSV")
      ->required();
  solve_cmd->add_option("--delta", solve_opt.delta, "Tube radius")->required();
  solve_cmd->add_option("--alpha", solve_opt.alpha,
                        "l1 prox parameter (default 0.2*||A||^2)");
  solve_cmd->add_option("--lambda", solve_opt.lambda,
                        "step parameter (default 0.999*alpha/||A||^2)");
  solve_cmd->add_option("--tol", solve_opt.tol, "Stage-II support threshold");
  solve_cmd->add_option("--epsilon", solve_opt.epsilon,
                        "relative-change tolerance");
  solve_cmd->add_option("--eta", solve_opt.eta, "support-stationarity window");
  solve_cmd->add_option("--max-iters", solve_opt.max_iters, "iteration budget");
  solve_cmd->add_option("--scheme", solve_opt.scheme, "beta-first or tau-first");
  solve_cmd->add_flag("--no-postprocess", solve_opt.no_postprocess,
                      "skip the Stage-II refit");
  solve_cmd->add_option("--out", solve_opt.out_path, "write beta_hat CSV here");
  solve_cmd->add_option("--seed", solve_opt.seed, "power-iteration seed");

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Run the synthetic sweep");
  bench_cmd->add_option("--m-list", bench_opt.m_list, "comma-separated m values");
  bench_cmd->add_option("--sigma-list", bench_opt.sigma_list,
                        "comma-separated noise levels");
  bench_cmd->add_option("--reps", bench_opt.reps, "replicates per cell");
  bench_cmd->add_option("--seed", bench_opt.seed, "base seed");
  bench_cmd->add_option("--methods", bench_opt.methods, "subset of fp,adm,ladm");
  bench_cmd->add_option("--out-dir", bench_opt.out_dir, "output directory");
  bench_cmd->add_option("--scale", bench_opt.scale,
                        "n,p,s per unit of m (default 720,2560,80)");
  bench_cmd->add_option("--jobs", bench_opt.jobs,
                        "worker threads (default DANTZIG_JOBS or hardware)");

  ClassifyOptions classify_opt;
  auto* classify_cmd =
      app.add_subcommand("classify", "Feature-screened classification pipeline");
  classify_cmd
      ->add_option("--train-x", classify_opt.train_x, "training features CSV")
      ->required();
  classify_cmd
      ->add_option("--train-y", classify_opt.train_y, "training labels CSV")
      ->required();
  classify_cmd->add_option("--test-x", classify_opt.test_x, "test features CSV")
      ->required();
  classify_cmd->add_option("--test-y", classify_opt.test_y, "test labels CSV")
      ->required();
  classify_cmd->add_option("--n-top", classify_opt.n_top,
                           "number of top-variance biomarkers");
  classify_cmd->add_option("--delta-list", classify_opt.delta_list,
                           "comma-separated tube radii");
  classify_cmd->add_option("--alpha", classify_opt.alpha,
                           "l1 prox parameter (default ||X~^T X~||^2)");
  classify_cmd->add_option("--tol", classify_opt.tol,
                           "Stage-II support threshold");
  classify_cmd->add_option("--epsilon", classify_opt.epsilon,
                           "relative-change tolerance");
  classify_cmd->add_option("--eta", classify_opt.eta, "support window");
  classify_cmd->add_option("--max-iters", classify_opt.max_iters,
                           "iteration budget");
  classify_cmd->add_flag("--postprocess", classify_opt.postprocess,
                         "apply the Stage-II refit inside training");
  classify_cmd->add_option("--out", classify_opt.out_path, "results CSV path");
  classify_cmd->add_option(
      "--emit-raw", classify_opt.emit_raw,
      "write raw predictor values here (one column per delta)");

  OracleCheckOptions oracle_opt;
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "Cross-check the solver against the LP reference");
  oracle_cmd->add_option("--n", oracle_opt.n, "rows")->required();
  oracle_cmd->add_option("--p", oracle_opt.p, "columns")->required();
  oracle_cmd->add_option("--delta", oracle_opt.delta, "tube radius")->required();
  oracle_cmd->add_option("--seed", oracle_opt.seed, "base seed")->required();
  oracle_cmd->add_option("--trials", oracle_opt.trials, "instance count")
      ->required();
  oracle_cmd->add_option("--sigma", oracle_opt.sigma, "noise level");
  oracle_cmd->add_option("--s", oracle_opt.s, "planted sparsity (default p/4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (solve_cmd->parsed()) return run_solve(solve_opt);
  if (bench_cmd->parsed()) return run_bench(bench_opt);
  if (classify_cmd->parsed()) return run_classify(classify_opt);
  if (oracle_cmd->parsed()) return run_oracle_check(oracle_opt);
  std::cerr << "error: no subcommand given\n";
  return kExitUsage;
}
