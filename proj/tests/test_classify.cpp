#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dantzig/classify.hpp"
#include "dantzig/errors.hpp"
#include "dantzig/fpsolver.hpp"
#include "dantzig/oracle.hpp"
#include "test_util.hpp"

using namespace dantzig;

namespace {

LabeledDataset random_dataset(std::uint64_t seed, int rows, int cols) {
  Rng rng(seed);
  Eigen::MatrixXd features = testutil::random_matrix(rng, rows, cols);
  std::vector<int> labels(static_cast<std::size_t>(rows));
  for (auto& label : labels) label = (rng.next_u64() & 1u) ? 1 : 0;
  return LabeledDataset(std::move(features), std::move(labels));
}

}  // namespace

TEST_CASE("ingestion normalizes columns and round-trips raw units") {
  Rng rng(61);
  Eigen::MatrixXd features = testutil::random_matrix(rng, 10, 6, 3.0);
  const Eigen::MatrixXd original = features;
  LabeledDataset data(std::move(features), std::vector<int>(10, 0));

  for (Eigen::Index j = 0; j < data.cols(); ++j)
    CHECK(std::abs(data.features().col(j).norm() - 1.0) <= 1e-12);

  const Eigen::MatrixXd raw = data.raw_features();
  CHECK((raw - original).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("dataset rejects malformed labels") {
  Rng rng(62);
  Eigen::MatrixXd features = testutil::random_matrix(rng, 4, 3);
  CHECK_THROWS_AS(LabeledDataset(features, std::vector<int>{0, 1}),
                  DimensionMismatch);
  CHECK_THROWS_AS(LabeledDataset(features, std::vector<int>{0, 1, 2, 0}), Error);
}

TEST_CASE("select_top_variance matches a brute-force sort") {
  const auto data = random_dataset(63, 38, 50);
  const auto selection = select_top_variance(data, 10);
  REQUIRE(selection.size() == 10);

  // Brute force on the normalized features.
  std::vector<std::pair<double, int>> scored;
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const double mean = data.features().col(j).mean();
    const double variance =
        (data.features().col(j).array() - mean).square().sum() /
        static_cast<double>(data.rows() - 1);
    scored.push_back({variance, static_cast<int>(j)});
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  std::vector<int> expected;
  for (int k = 0; k < 10; ++k) expected.push_back(scored[static_cast<std::size_t>(k)].second);
  std::sort(expected.begin(), expected.end());
  CHECK(selection == expected);
}

TEST_CASE("select_top_variance keeps all columns at N = p") {
  const auto data = random_dataset(64, 12, 9);
  const auto selection = select_top_variance(data, 9);
  REQUIRE(selection.size() == 9);
  for (int j = 0; j < 9; ++j) CHECK(selection[static_cast<std::size_t>(j)] == j);
}

TEST_CASE("constant columns are never selected while any column varies") {
  Rng rng(65);
  Eigen::MatrixXd features = testutil::random_matrix(rng, 20, 5);
  features.col(2).setConstant(0.7);  // zero variance
  LabeledDataset data(std::move(features), std::vector<int>(20, 1));
  const auto selection = select_top_variance(data, 4);
  CHECK(std::find(selection.begin(), selection.end(), 2) == selection.end());
}

TEST_CASE("select_top_variance rejects oversized N") {
  const auto data = random_dataset(66, 8, 4);
  CHECK_THROWS_AS(select_top_variance(data, 5), NTooLarge);
}

TEST_CASE("train_reduced embeds the reduced solution") {
  const auto data = random_dataset(67, 24, 20);
  const std::vector<int> selection{1, 4, 9, 13, 17};

  SolverConfig cfg;
  cfg.alpha = 4.0;
  cfg.epsilon = 1e-8;
  cfg.eta = 1 << 30;
  cfg.max_iters = 100000;
  cfg.postprocess = false;

  const Eigen::VectorXd beta = train_reduced(data, selection, 0.25, cfg);
  REQUIRE(beta.size() == 20);
  for (Eigen::Index j = 0; j < 20; ++j) {
    const bool selected =
        std::find(selection.begin(), selection.end(), static_cast<int>(j)) !=
        selection.end();
    if (!selected) CHECK(beta(j) == 0.0);
  }

  // The reduced constraint is met by the embedded vector.
  Eigen::MatrixXd reduced(data.rows(), static_cast<Eigen::Index>(selection.size()));
  Eigen::VectorXd beta_reduced(static_cast<Eigen::Index>(selection.size()));
  for (std::size_t c = 0; c < selection.size(); ++c) {
    reduced.col(static_cast<Eigen::Index>(c)) =
        data.features().col(selection[c]);
    beta_reduced(static_cast<Eigen::Index>(c)) = beta(selection[c]);
  }
  const Eigen::VectorXd residual =
      reduced.transpose() * (reduced * beta_reduced - data.labels_as_vector());
  CHECK(residual.lpNorm<Eigen::Infinity>() <= 0.25 + 1e-6);
}

TEST_CASE("train_reduced with all columns equals the full solve") {
  const auto data = random_dataset(68, 16, 6);
  std::vector<int> all{0, 1, 2, 3, 4, 5};

  SolverConfig cfg;
  cfg.alpha = 4.0;
  cfg.epsilon = 1e-8;
  cfg.eta = 1 << 30;
  cfg.max_iters = 100000;
  cfg.postprocess = false;

  const Eigen::VectorXd via_selection = train_reduced(data, all, 0.3, cfg);

  ProblemInstance problem;
  problem.X = data.features();
  problem.y = data.labels_as_vector();
  problem.D = Eigen::VectorXd::Ones(6);
  problem.delta = 0.3;
  const SolveResult direct = solve(problem, cfg);
  CHECK((via_selection - direct.beta_hat).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("label assignment follows the threshold and cluster rule") {
  Eigen::VectorXd y(3);
  y << 0.1, 0.7, 0.5;
  // anchors y0 = 0.1, y1 = 0.7; 0.5 is nearer to 0.7.
  const auto labels = assign_labels(y);
  CHECK(labels == std::vector<int>({0, 1, 1}));
}

TEST_CASE("all low values label 0") {
  Eigen::VectorXd y(4);
  y << 0.1, 0.2, 0.3, 0.48;
  CHECK(assign_labels(y) == std::vector<int>({0, 0, 0, 0}));
}

TEST_CASE("ambiguous value with no anchors falls back to the 0.5 split") {
  Eigen::VectorXd y(1);
  y << 0.50;
  CHECK(assign_labels(y) == std::vector<int>({1}));
  y << 0.4999;
  CHECK(assign_labels(y) == std::vector<int>({0}));
  Eigen::VectorXd band(2);
  band << 0.49, 0.499;  // both ambiguous, no anchor on either side
  CHECK(assign_labels(band) == std::vector<int>({0, 0}));
}

TEST_CASE("equidistant ambiguous values prefer the low cluster") {
  Eigen::VectorXd y(3);
  y << 0.4, 0.5, 0.6;
  CHECK(assign_labels(y) == std::vector<int>({0, 0, 1}));
}

TEST_CASE("label assignment is idempotent on the ambiguous band") {
  Eigen::VectorXd y(5);
  y << 0.1, 0.495, 0.505, 0.9, 0.51;
  const auto first = assign_labels(y);
  const auto second = assign_labels(y);
  CHECK(first == second);
}

TEST_CASE("prediction is invariant under row permutation") {
  const auto data = random_dataset(69, 12, 8);
  Rng rng(70);
  const Eigen::VectorXd beta = testutil::random_vector(rng, 8);
  const auto base = predict_labels(data.features(), beta);

  std::vector<int> perm{11, 3, 7, 0, 9, 1, 4, 10, 2, 8, 6, 5};
  Eigen::MatrixXd permuted(12, 8);
  for (int i = 0; i < 12; ++i)
    permuted.row(i) = data.features().row(perm[static_cast<std::size_t>(i)]);
  const auto shuffled = predict_labels(permuted, beta);
  for (int i = 0; i < 12; ++i)
    CHECK(shuffled.labels[static_cast<std::size_t>(i)] ==
          base.labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
}

TEST_CASE("misdiagnosis_count is the Hamming distance") {
  CHECK(misdiagnosis_count({0, 1, 1, 0}, {0, 1, 1, 0}) == 0);
  CHECK(misdiagnosis_count({0, 1, 1, 0}, {0, 1, 0, 0}) == 1);
  std::vector<int> ones(34, 1), zeros(34, 0);
  CHECK(misdiagnosis_count(ones, zeros) == 34);
  CHECK_THROWS_AS(misdiagnosis_count({0, 1}, {0}), DimensionMismatch);
}
