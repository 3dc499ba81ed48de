#include "dantzig/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dantzig/errors.hpp"
#include "dantzig/fpsolver.hpp"
#include "dantzig/linop.hpp"

namespace dantzig {

LabeledDataset::LabeledDataset(Eigen::MatrixXd features, std::vector<int> labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (static_cast<Eigen::Index>(labels_.size()) != features_.rows())
    throw DimensionMismatch("labels length must equal feature rows");
  for (int label : labels_)
    if (label != 0 && label != 1) throw Error("labels must be 0 or 1");
  column_scales_.resize(features_.cols());
  for (Eigen::Index j = 0; j < features_.cols(); ++j) {
    const double norm = features_.col(j).norm();
    column_scales_(j) = norm;
    if (norm > 0.0) features_.col(j) /= norm;
  }
}

Eigen::VectorXd LabeledDataset::labels_as_vector() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(labels_.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = static_cast<double>(labels_[static_cast<std::size_t>(i)]);
  return v;
}

Eigen::MatrixXd LabeledDataset::raw_features() const {
  Eigen::MatrixXd raw = features_;
  for (Eigen::Index j = 0; j < raw.cols(); ++j)
    raw.col(j) *= column_scales_(j);
  return raw;
}

std::vector<int> select_top_variance(const LabeledDataset& train, int N) {
  const Eigen::Index p = train.cols();
  if (N < 1 || N > p)
    throw NTooLarge("top-variance selection needs 1 <= N <= " +
                    std::to_string(p) + ", got " + std::to_string(N));
  const Eigen::Index rows = train.rows();
  if (rows < 2) throw Error("variance needs at least 2 rows");

  Eigen::VectorXd variance(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = train.features().col(j).mean();
    variance(j) = (train.features().col(j).array() - mean).square().sum() /
                  static_cast<double>(rows - 1);
  }

  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  // Stable sort keeps the lower index on variance ties.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return variance(a) > variance(b);
  });
  std::vector<int> selection(order.begin(), order.begin() + N);
  std::sort(selection.begin(), selection.end());
  return selection;
}

Eigen::VectorXd train_reduced(const LabeledDataset& train,
                              const std::vector<int>& selection, double delta,
                              const SolverConfig& cfg, SolveResult* details) {
  if (selection.empty()) throw Error("train_reduced: empty selection");
  for (int j : selection)
    if (j < 0 || j >= train.cols())
      throw DimensionMismatch("train_reduced: selection index out of range");

  Eigen::MatrixXd reduced(train.rows(),
                          static_cast<Eigen::Index>(selection.size()));
  for (std::size_t c = 0; c < selection.size(); ++c)
    reduced.col(static_cast<Eigen::Index>(c)) =
        train.features().col(selection[c]);

  // Columns are already unit-normalized, hence D = I exactly on the
  // reduced problem.
  ProblemInstance problem;
  problem.X = std::move(reduced);
  problem.y = train.labels_as_vector();
  problem.D = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(selection.size()));
  problem.delta = delta;
  validate_instance(problem);

  const SolveResult result = solve(problem, cfg);
  if (details) *details = result;

  Eigen::VectorXd full = Eigen::VectorXd::Zero(train.cols());
  for (std::size_t c = 0; c < selection.size(); ++c)
    full(selection[c]) = result.beta_hat(static_cast<Eigen::Index>(c));
  return full;
}

std::vector<int> assign_labels(const Eigen::VectorXd& y) {
  // Cluster anchors from the unambiguous values.
  bool has_low = false, has_high = false;
  double y0 = -std::numeric_limits<double>::infinity();
  double y1 = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) < 0.49) { has_low = true; y0 = std::max(y0, y(i)); }
    if (y(i) > 0.51) { has_high = true; y1 = std::min(y1, y(i)); }
  }

  std::vector<int> labels(static_cast<std::size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    int label;
    if (y(i) < 0.49) {
      label = 0;
    } else if (y(i) > 0.51) {
      label = 1;
    } else if (has_low && has_high) {
      label = std::abs(y(i) - y0) <= std::abs(y(i) - y1) ? 0 : 1;
    } else {
      label = y(i) >= 0.5 ? 1 : 0;  // missing-anchor fallback
    }
    labels[static_cast<std::size_t>(i)] = label;
  }
  return labels;
}

Prediction predict_labels(const Eigen::MatrixXd& test_features,
                          const Eigen::VectorXd& beta_hat) {
  if (beta_hat.size() != test_features.cols())
    throw DimensionMismatch("predict_labels: len(beta_hat) != cols(test)");
  Prediction prediction;
  prediction.y_raw = test_features * beta_hat;
  prediction.labels = assign_labels(prediction.y_raw);
  return prediction;
}

int misdiagnosis_count(const std::vector<int>& predicted,
                       const std::vector<int>& actual) {
  if (predicted.size() != actual.size())
    throw DimensionMismatch("misdiagnosis_count: label length mismatch");
  int count = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] != actual[i]) ++count;
  return count;
}

}  // namespace dantzig
