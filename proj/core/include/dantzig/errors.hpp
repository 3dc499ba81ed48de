#pragma once

#include <stdexcept>
#include <string>

namespace dantzig {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// Column j of the design matrix has zero l2 norm.
class ZeroColumn : public Error {
 public:
  explicit ZeroColumn(int column)
      : Error("design column " + std::to_string(column) + " has zero l2 norm"),
        column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

// lambda/alpha >= 1/||A||^2: the fixed-point schemes may diverge.
class StepSizeTooLarge : public Error {
 public:
  StepSizeTooLarge(double ratio, double limit)
      : Error("step condition violated: lambda/alpha = " + std::to_string(ratio) +
              " must be < " + std::to_string(limit)),
        ratio_(ratio),
        limit_(limit) {}
  double ratio() const { return ratio_; }
  double limit() const { return limit_; }

 private:
  double ratio_;
  double limit_;
};

// Power iteration did not converge; best_estimate is still usable.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& msg, double best_estimate)
      : Error(msg), best_estimate_(best_estimate) {}
  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

// Stage-II support estimate came back empty; callers may substitute beta = 0.
class EmptySupport : public Error {
 public:
  EmptySupport() : Error("estimated support is empty") {}
};

// Instance exceeds the dense LP reference solver's size cap.
class SizeLimit : public Error {
 public:
  explicit SizeLimit(const std::string& msg) : Error(msg) {}
};

class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& msg) : Error(msg) {}
};

// ADM/LADM operate on the D = I reformulation only.
class RequiresUnitScaling : public Error {
 public:
  RequiresUnitScaling()
      : Error("ADM/LADM require unit column scaling (D = I)") {}
};

class EllTooSmall : public Error {
 public:
  EllTooSmall(double ell, double required)
      : Error("LADM proximal parameter ell = " + std::to_string(ell) +
              " must exceed " + std::to_string(required)) {}
};

class NTooLarge : public Error {
 public:
  explicit NTooLarge(const std::string& msg) : Error(msg) {}
};

class DegenerateDenominator : public Error {
 public:
  DegenerateDenominator()
      : Error("accuracy ratio denominator sum_j min{beta_j^2, sigma^2} is zero") {}
};

}  // namespace dantzig
