#include <doctest.h>

#include <sys/wait.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "argminci/csv.hpp"
#include "argminci/matrix.hpp"
#include "argminci/rng.hpp"

using namespace argminci;

namespace {

int run(const std::string& args) {
  const std::string cmd =
      std::string(CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

void write_csv(const std::string& path, const SampleMatrix& x, bool header) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  write_matrix_csv(out, x, header);
}

}  // namespace

TEST_CASE("analyze emits a report and exit code 0") {
  RngStream rng(41);
  Eigen::MatrixXd values(30, 3);
  for (int i = 0; i < 30; ++i) {
    values(i, 0) = rng.normal() + 5.0;
    values(i, 1) = rng.normal();
    values(i, 2) = rng.normal() + 5.0;
  }
  write_csv("cli_basic.csv", SampleMatrix::from_values(values), false);

  CHECK(run("analyze --input cli_basic.csv --folds 2 --lambda 1 "
            "--output cli_basic.json") == 0);
  nlohmann::json report = nlohmann::json::parse(slurp("cli_basic.json"));
  CHECK(report["confidence_set"] == nlohmann::json::array({2}));
  CHECK(report["method"]["folds"] == 2);
  CHECK(report["method"]["lambda"] == 1.0);
}

TEST_CASE("input failures exit with code 2") {
  CHECK(run("analyze --input does_not_exist.csv") == 2);

  spill("cli_ragged.csv", "1,2\n1,2,3\n");
  CHECK(run("analyze --input cli_ragged.csv") == 2);
  const std::string err = slurp("cli_stderr.txt");
  CHECK(err.find("cli_ragged.csv:2") != std::string::npos);

  spill("cli_tiny.csv", "1,2\n3,4\n");
  CHECK(run("analyze --input cli_tiny.csv --variance sideways") == 2);
  CHECK(run("analyze --input cli_tiny.csv --folds banana") == 2);
  CHECK(run("analyze --input cli_tiny.csv --alpha 1.5 --lambda 1") == 2);
  CHECK(run("analyze") == 2);
}

TEST_CASE("degenerate spread respects the requested policy") {
  spill("cli_const.csv", "1,2\n1,2\n1,2\n1,2\n");
  CHECK(run("analyze --input cli_const.csv --lambda 0 --degenerate error") == 3);
  CHECK(run("analyze --input cli_const.csv --lambda 0 --degenerate include "
            "--output cli_const.json") == 0);
  nlohmann::json report = nlohmann::json::parse(slurp("cli_const.json"));
  CHECK(report["confidence_set"] == nlohmann::json::array({1, 2}));
  CHECK(report["dimensions"][0]["statistic"].is_null());
  CHECK_FALSE(report["warnings"].empty());
}

TEST_CASE("alpha zero keeps every dimension") {
  spill("cli_alpha.csv", "1,9\n2,8\n1,9\n2,8\n");
  CHECK(run("analyze --input cli_alpha.csv --alpha 0 --lambda 1 "
            "--output cli_alpha.json") == 0);
  nlohmann::json report = nlohmann::json::parse(slurp("cli_alpha.json"));
  CHECK(report["confidence_set"] == nlohmann::json::array({1, 2}));
}

TEST_CASE("two columns reduce to the paired one-sided z-decision") {
  RngStream rng(17);
  const int n = 24;
  Eigen::MatrixXd values(n, 2);
  for (int i = 0; i < n; ++i) {
    values(i, 0) = rng.normal() + 0.3;
    values(i, 1) = rng.normal();
  }
  write_csv("cli_paired.csv", SampleMatrix::from_values(values), false);
  CHECK(run("analyze --input cli_paired.csv --folds 2 --lambda 0 "
            "--output cli_paired.json") == 0);
  nlohmann::json report = nlohmann::json::parse(slurp("cli_paired.json"));

  // With a single competitor the weighted gap is the plain column gap, so
  // the statistic is the paired z-score with the pooled 1/n variance.
  Eigen::VectorXd d = values.col(0) - values.col(1);
  const double sd = std::sqrt((d.array() - d.mean()).square().sum() / n);
  const double t = d.sum() / (std::sqrt(static_cast<double>(n)) * sd);
  CHECK(report["dimensions"][0]["statistic"].get<double>() ==
        doctest::Approx(t).epsilon(1e-12));
  const bool kept = report["confidence_set"].size() == 2;
  CHECK(kept == (t < 1.6448536269514722));
}

TEST_CASE("golden leave-one-out analysis of a seeded binary matrix") {
  RngStream rng(183);
  const int n = 183, p = 44;
  Eigen::MatrixXd values(n, p);
  for (int j = 0; j < p; ++j) {
    const double rate = 0.3 + 0.4 * static_cast<double>(j) / (p - 1);
    for (int i = 0; i < n; ++i)
      values(i, j) = rng.uniform() < rate ? 1.0 : 0.0;
  }
  write_csv("cli_golden.csv", SampleMatrix::from_values(values), false);

  CHECK(run("analyze --input cli_golden.csv --folds loo --lambda auto "
            "--seed 7 --output cli_golden_a.json") == 0);
  CHECK(run("analyze --input cli_golden.csv --folds loo --lambda auto "
            "--seed 7 --output cli_golden_b.json") == 0);
  CHECK(slurp("cli_golden_a.json") == slurp("cli_golden_b.json"));

  nlohmann::json report = nlohmann::json::parse(slurp("cli_golden_a.json"));
  CHECK(report["confidence_set"] ==
        nlohmann::json::array(
            {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14, 18, 21, 25}));
  CHECK(report["method"]["lambda_mode"] == "auto");
  CHECK(report["dimensions"][0].contains("lambda_trace"));
}

TEST_CASE("simulate reruns are byte-identical") {
  spill("cli_sim.ini",
        "[experiment]\n"
        "kind = simulate\n"
        "repetitions = 3\n"
        "seed = 11\n"
        "[data]\n"
        "landscape = flat\n"
        "p = 4\n"
        "n = 16\n"
        "[method]\n"
        "lambda = 1.0\n"
        "folds = 2\n");
  CHECK(run("simulate --config cli_sim.ini --out-prefix cli_sim_a") == 0);
  CHECK(run("simulate --config cli_sim.ini --out-prefix cli_sim_b") == 0);
  CHECK(slurp("cli_sim_a.csv") == slurp("cli_sim_b.csv"));
  CHECK(slurp("cli_sim_a.json") == slurp("cli_sim_b.json"));
  CHECK(slurp("cli_sim_a.csv").rfind("repetition,digest,method,", 0) == 0);
}

TEST_CASE("experiment kinds must match the subcommand") {
  CHECK(run("compare --config cli_sim.ini --out-prefix cli_mismatch") == 2);
  CHECK(run("simulate --config does_not_exist.ini") == 2);
}

TEST_CASE("calibrate and stability produce their tables") {
  spill("cli_cal.ini",
        "[experiment]\n"
        "kind = calibrate\n"
        "repetitions = 2\n"
        "seed = 5\n"
        "[data]\n"
        "landscape = flat\n"
        "p = 3\n"
        "n = 20\n"
        "[method]\n"
        "folds = 2\n");
  CHECK(run("calibrate --config cli_cal.ini --out-prefix cli_cal") == 0);
  CHECK(slurp("cli_cal.csv").rfind("repetition,dimension,lambda0,", 0) == 0);
  nlohmann::json cal = nlohmann::json::parse(slurp("cli_cal.json"));
  CHECK(cal.contains("traces"));

  spill("cli_stab.ini",
        "[experiment]\n"
        "kind = stability\n"
        "seed = 5\n"
        "[data]\n"
        "landscape = flat\n"
        "p = 4\n"
        "[stability]\n"
        "n_values = 8, 16\n"
        "lambda = sqrt_n\n"
        "reps = 20\n");
  CHECK(run("stability --config cli_stab.ini --out-prefix cli_stab") == 0);
  CHECK(slurp("cli_stab.csv").rfind("n,lambda,repetition,", 0) == 0);
  nlohmann::json stab = nlohmann::json::parse(slurp("cli_stab.json"));
  CHECK(stab.contains("slope_grad2"));
}
