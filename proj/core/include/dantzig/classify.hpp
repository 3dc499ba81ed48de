#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dantzig/problem.hpp"

namespace dantzig {

// Feature matrix (rows = subjects, columns = biomarkers) with binary labels.
// Columns are rescaled to unit l2 norm on ingestion; the original norms are
// kept so raw-unit data round-trips.
class LabeledDataset {
 public:
  LabeledDataset(Eigen::MatrixXd features, std::vector<int> labels);

  const Eigen::MatrixXd& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  const Eigen::VectorXd& column_scales() const { return column_scales_; }

  Eigen::VectorXd labels_as_vector() const;

  // Features in their original (pre-normalization) units.
  Eigen::MatrixXd raw_features() const;

  Eigen::Index rows() const { return features_.rows(); }
  Eigen::Index cols() const { return features_.cols(); }

 private:
  Eigen::MatrixXd features_;
  std::vector<int> labels_;
  Eigen::VectorXd column_scales_;
};

// Indices of the N columns with largest sample variance (divisor rows-1),
// ties broken toward the lower index; result sorted ascending.
std::vector<int> select_top_variance(const LabeledDataset& train, int N);

// Solves the reduced Dantzig problem on the selected columns (unit scaling,
// D = I) and embeds the solution into a full-length vector, zero off the
// selection. Stage-II postprocessing runs only if cfg.postprocess is set.
Eigen::VectorXd train_reduced(const LabeledDataset& train,
                              const std::vector<int>& selection, double delta,
                              const SolverConfig& cfg,
                              SolveResult* details = nullptr);

struct Prediction {
  Eigen::VectorXd y_raw;       // X_test * beta_hat
  std::vector<int> labels;     // thresholded and clustered
};

// Label 0 below 0.49 and 1 above 0.51. Values inside [0.49, 0.51] join the
// nearer of the two anchor clusters y0 = max{y < 0.49}, y1 = min{y > 0.51};
// when an anchor is missing the value is split at 0.5 (>= 0.5 -> 1).
std::vector<int> assign_labels(const Eigen::VectorXd& y_raw);

Prediction predict_labels(const Eigen::MatrixXd& test_features,
                          const Eigen::VectorXd& beta_hat);

// Hamming distance between two binary label vectors.
int misdiagnosis_count(const std::vector<int>& predicted,
                       const std::vector<int>& actual);

}  // namespace dantzig
