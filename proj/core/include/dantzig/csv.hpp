#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace dantzig {

// Plain numeric CSV: no header, '.' decimal separator, one row per line.
// Floats are written with 17 significant digits so write-then-read
// reproduces every double exactly.

std::string format_double(double value);
double parse_double(const std::string& token);

Eigen::MatrixXd read_matrix_csv(const std::string& path);
Eigen::VectorXd read_vector_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);
void write_vector_csv(std::ostream& os, const Eigen::VectorXd& v);

}  // namespace dantzig
