#pragma once

#include <Eigen/Dense>

namespace dantzig {

// Componentwise sign(u) * max(|u| - t, 0); the prox of t*||.||_1.
// sign(0) is taken as 0, which makes no difference to the output.
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& u, double t);

// Euclidean projection onto the cube C = {beta : ||beta - b||_inf <= delta}.
Eigen::VectorXd project_cube(const Eigen::VectorXd& v, const Eigen::VectorXd& b,
                             double delta);

// (I - prox_{i_C})(v) = prox_{delta ||.||_1}(v - b); the residual left after
// projecting v onto the cube.
Eigen::VectorXd residual_prox(const Eigen::VectorXd& v, const Eigen::VectorXd& b,
                              double delta);

// In-place variants for the solver hot loops.
void soft_threshold_inplace(Eigen::VectorXd& u, double t);
void clamp_inf_ball_inplace(Eigen::VectorXd& v, double radius);

}  // namespace dantzig
