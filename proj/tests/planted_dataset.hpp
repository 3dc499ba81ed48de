#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dantzig/rng.hpp"

namespace testutil {

struct PlantedClassification {
  Eigen::MatrixXd train_x;  // 60 x 500
  Eigen::MatrixXd test_x;   // 40 x 500
  std::vector<int> train_y;
  std::vector<int> test_y;
};

// Binary labels follow a 10-sparse +/-1 linear rule on unit-normalized
// features, mapped to targets 0.1 / 0.9 (margin 0.4 around the 0.5 split);
// every feature entry then receives sigma = 0.02 Gaussian noise.
inline PlantedClassification make_planted_classification(std::uint64_t seed) {
  const int p = 500, s = 10;
  dantzig::Rng rng(seed);

  Eigen::VectorXd rule = Eigen::VectorXd::Zero(p);
  for (int k = 0; k < s; ++k) {
    int idx;
    do {
      idx = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p)));
    } while (rule(idx) != 0.0);
    rule(idx) = rng.next_sign();
  }

  auto make_block = [&](int rows, std::vector<int>& labels) {
    Eigen::MatrixXd X(rows, p);
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < rows; ++i) X(i, j) = rng.next_normal();
    for (int j = 0; j < p; ++j) X.col(j) /= X.col(j).norm();

    Eigen::VectorXd target(rows);
    labels.resize(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
      labels[static_cast<std::size_t>(i)] = (rng.next_u64() & 1u) ? 1 : 0;
      target(i) = labels[static_cast<std::size_t>(i)] ? 0.9 : 0.1;
    }
    // Rank-one correction makes the rule exact before the feature noise.
    X += (target - X * rule) * (rule.transpose() / rule.squaredNorm());
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < rows; ++i) X(i, j) += 0.02 * rng.next_normal();
    return X;
  };

  PlantedClassification out;
  out.train_x = make_block(60, out.train_y);
  out.test_x = make_block(40, out.test_y);
  return out;
}

}  // namespace testutil
