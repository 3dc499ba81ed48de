#include "dantzig/prox.hpp"

#include <cmath>

#include "dantzig/errors.hpp"

namespace dantzig {

static double soft_threshold_scalar(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& u, double t) {
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    out(i) = soft_threshold_scalar(u(i), t);
  return out;
}

void soft_threshold_inplace(Eigen::VectorXd& u, double t) {
  for (Eigen::Index i = 0; i < u.size(); ++i)
    u(i) = soft_threshold_scalar(u(i), t);
}

Eigen::VectorXd project_cube(const Eigen::VectorXd& v, const Eigen::VectorXd& b,
                             double delta) {
  if (v.size() != b.size())
    throw DimensionMismatch("project_cube: len(v) != len(b)");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double d = v(i) - b(i);
    out(i) = b(i) + std::min(std::max(d, -delta), delta);
  }
  return out;
}

Eigen::VectorXd residual_prox(const Eigen::VectorXd& v, const Eigen::VectorXd& b,
                              double delta) {
  if (v.size() != b.size())
    throw DimensionMismatch("residual_prox: len(v) != len(b)");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = soft_threshold_scalar(v(i) - b(i), delta);
  return out;
}

void clamp_inf_ball_inplace(Eigen::VectorXd& v, double radius) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = std::min(std::max(v(i), -radius), radius);
}

}  // namespace dantzig
