#include "dantzig/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "dantzig/errors.hpp"

namespace dantzig {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("failed to format double");
  return std::string(buf, ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t' ||
                           *(last - 1) == '\r')) --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw Error("malformed CSV number: '" + token + "'");
  return value;
}

static std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) row.push_back(parse_double(token));
    if (!rows.empty() && row.size() != rows.front().size())
      throw DimensionMismatch("ragged CSV rows in " + path);
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto rows = read_rows(path);
  if (rows.empty()) throw Error("empty CSV file: " + path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  auto rows = read_rows(path);
  if (rows.empty()) throw Error("empty CSV file: " + path);
  if (rows.front().size() != 1)
    throw DimensionMismatch("expected a single-column CSV in " + path);
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = rows[static_cast<std::size_t>(i)].front();
  return v;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

void write_vector_csv(std::ostream& os, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) os << format_double(v(i)) << '\n';
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  write_matrix_csv(out, m);
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  write_vector_csv(out, v);
}

}  // namespace dantzig
