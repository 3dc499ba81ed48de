// Integration tests that drive the installed CLI binary end to end.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dantzig/csv.hpp"
#include "planted_dataset.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

CliResult run_cli(const std::string& args) {
  const std::string command =
      std::string(DANTZIG_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("dantzig_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

void write_identity_fixture(const TempDir& dir) {
  std::ofstream x(dir.file("x.csv"));
  x << "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n";
  std::ofstream y(dir.file("y.csv"));
  y << "1\n0\n0\n0\n";
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Strips the wall_seconds column (index 7) from a records.csv row.
std::string without_wall_column(const std::string& row) {
  std::stringstream ss(row);
  std::string token, rebuilt;
  int column = 0;
  while (std::getline(ss, token, ',')) {
    if (column != 7) {
      if (!rebuilt.empty()) rebuilt.push_back(',');
      rebuilt += token;
    }
    ++column;
  }
  return rebuilt;
}

}  // namespace

TEST_CASE("solve smoke run debiases the identity instance") {
  TempDir dir;
  write_identity_fixture(dir);
  const auto result = run_cli("solve --x " + dir.file("x.csv") + " --y " +
                              dir.file("y.csv") +
                              " --delta 0.5 --alpha 1.0 --tol 0.1 --out " +
                              dir.file("beta.csv"));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"schema\":1") != std::string::npos);
  CHECK(result.output.find("\"command\":\"solve\"") != std::string::npos);

  const Eigen::VectorXd beta = dantzig::read_vector_csv(dir.file("beta.csv"));
  REQUIRE(beta.size() == 4);
  CHECK(beta(0) == doctest::Approx(1.0).epsilon(1e-10));
  for (int j = 1; j < 4; ++j) CHECK(beta(j) == 0.0);
}

TEST_CASE("solve without --delta exits 2") {
  TempDir dir;
  write_identity_fixture(dir);
  const auto result =
      run_cli("solve --x " + dir.file("x.csv") + " --y " + dir.file("y.csv"));
  CHECK(result.exit_code == 2);
}

TEST_CASE("solve with a malformed CSV exits 2") {
  TempDir dir;
  std::ofstream x(dir.file("x.csv"));
  x << "1,banana\n0,1\n";
  x.close();
  std::ofstream y(dir.file("y.csv"));
  y << "1\n0\n";
  y.close();
  const auto result = run_cli("solve --x " + dir.file("x.csv") + " --y " +
                              dir.file("y.csv") + " --delta 0.1");
  CHECK(result.exit_code == 2);
}

TEST_CASE("solve --no-postprocess outputs the raw Stage-I iterate") {
  TempDir dir;
  write_identity_fixture(dir);
  const auto result = run_cli("solve --x " + dir.file("x.csv") + " --y " +
                              dir.file("y.csv") +
                              " --delta 0.5 --alpha 1.0 --epsilon 1e-10 "
                              "--no-postprocess --out " +
                              dir.file("raw.csv"));
  CHECK(result.exit_code == 0);
  const Eigen::VectorXd beta = dantzig::read_vector_csv(dir.file("raw.csv"));
  REQUIRE(beta.size() == 4);
  // The identity-design selector shrinks y toward zero by delta.
  CHECK(beta(0) == doctest::Approx(0.5).epsilon(1e-6));
  for (int j = 1; j < 4; ++j) CHECK(std::abs(beta(j)) <= 1e-8);
}

TEST_CASE("bench emits one row per cell and is reproducible modulo timing") {
  TempDir dir;
  const std::string base = "bench --m-list 1 --sigma-list 0.05 --reps 1 "
                           "--seed 42 --methods fp --scale 16,32,3 --jobs 1 ";
  const auto first = run_cli(base + "--out-dir " + dir.file("run1"));
  CHECK(first.exit_code == 0);
  const auto lines1 = read_lines(dir.file("run1") + "/records.csv");
  REQUIRE(lines1.size() == 2);  // header + one record
  CHECK(lines1[0] ==
        "method,m,sigma,replicate,rho_raw,rho_post,iterations,wall_seconds,"
        "feas_violation,termination");

  const auto second = run_cli(base + "--out-dir " + dir.file("run2"));
  CHECK(second.exit_code == 0);
  const auto lines2 = read_lines(dir.file("run2") + "/records.csv");
  REQUIRE(lines2.size() == lines1.size());
  for (std::size_t i = 0; i < lines1.size(); ++i)
    CHECK(without_wall_column(lines1[i]) == without_wall_column(lines2[i]));
}

TEST_CASE("bench with two methods lists both in the records") {
  TempDir dir;
  const auto result = run_cli(
      "bench --m-list 1 --sigma-list 0.05 --reps 1 --seed 7 --methods fp,adm "
      "--scale 16,32,3 --jobs 1 --out-dir " + dir.file("out"));
  CHECK(result.exit_code == 0);
  const auto lines = read_lines(dir.file("out") + "/records.csv");
  REQUIRE(lines.size() == 3);
  bool has_fp = false, has_adm = false;
  for (const auto& line : lines) {
    if (line.rfind("fp,", 0) == 0) has_fp = true;
    if (line.rfind("adm,", 0) == 0) has_adm = true;
  }
  CHECK(has_fp);
  CHECK(has_adm);

  const auto aggregate = read_lines(dir.file("out") + "/aggregate.csv");
  CHECK(aggregate.front() == "method,m,sigma,metric,mean,std");
  CHECK(aggregate.size() == 1 + 2 * 4);  // two methods, four metrics
}

TEST_CASE("bench rejects an unknown method") {
  TempDir dir;
  const auto result = run_cli("bench --methods warp --out-dir " + dir.file("o"));
  CHECK(result.exit_code == 2);
}

TEST_CASE("classify runs the delta grid on the planted dataset") {
  TempDir dir;
  const auto data = testutil::make_planted_classification(20250810);
  dantzig::write_matrix_csv(dir.file("train_x.csv"), data.train_x);
  dantzig::write_matrix_csv(dir.file("test_x.csv"), data.test_x);
  {
    std::ofstream train_y(dir.file("train_y.csv"));
    for (int label : data.train_y) train_y << label << '\n';
    std::ofstream test_y(dir.file("test_y.csv"));
    for (int label : data.test_y) test_y << label << '\n';
  }

  const auto result = run_cli(
      "classify --train-x " + dir.file("train_x.csv") + " --train-y " +
      dir.file("train_y.csv") + " --test-x " + dir.file("test_x.csv") +
      " --test-y " + dir.file("test_y.csv") + " --n-top 500 --out " +
      dir.file("results.csv") + " --emit-raw " + dir.file("raw.csv"));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"best_misdiagnoses\":0") != std::string::npos);

  const auto lines = read_lines(dir.file("results.csv"));
  REQUIRE(lines.size() == 7);  // header + six deltas
  CHECK(lines[0] == "delta,misdiagnoses,iterations,wall_seconds");

  const Eigen::MatrixXd raw = dantzig::read_matrix_csv(dir.file("raw.csv"));
  CHECK(raw.rows() == 40);
  CHECK(raw.cols() == 6);
}

TEST_CASE("classify exits 2 on mismatched label length") {
  TempDir dir;
  const auto data = testutil::make_planted_classification(1);
  dantzig::write_matrix_csv(dir.file("train_x.csv"), data.train_x);
  dantzig::write_matrix_csv(dir.file("test_x.csv"), data.test_x);
  {
    std::ofstream train_y(dir.file("train_y.csv"));
    for (int label : data.train_y) train_y << label << '\n';
    std::ofstream test_y(dir.file("test_y.csv"));
    test_y << "0\n1\n";  // wrong length
  }
  const auto result = run_cli(
      "classify --train-x " + dir.file("train_x.csv") + " --train-y " +
      dir.file("train_y.csv") + " --test-x " + dir.file("test_x.csv") +
      " --test-y " + dir.file("test_y.csv") + " --n-top 100 --out " +
      dir.file("results.csv"));
  CHECK(result.exit_code == 2);
}

TEST_CASE("oracle-check passes at the reference scale") {
  const auto result =
      run_cli("oracle-check --n 12 --p 8 --delta 0.2 --seed 21 --trials 10");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("oracle-check rejects oversized p and zero trials") {
  CHECK(run_cli("oracle-check --n 12 --p 30 --delta 0.2 --seed 1 --trials 5")
            .exit_code == 2);
  CHECK(run_cli("oracle-check --n 12 --p 8 --delta 0.2 --seed 1 --trials 0")
            .exit_code == 2);
}

TEST_CASE("matrix CSV writing round-trips doubles exactly") {
  TempDir dir;
  Eigen::MatrixXd m(2, 3);
  m << 0.1, -1.0 / 3.0, 1e-300, 3.141592653589793, -2.2250738585072014e-308,
      12345.678901234567;
  dantzig::write_matrix_csv(dir.file("m.csv"), m);
  const Eigen::MatrixXd back = dantzig::read_matrix_csv(dir.file("m.csv"));
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) REQUIRE(back(i, j) == m(i, j));
}
