#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "argminci/error.hpp"
#include "argminci/rng.hpp"
#include "argminci/statistic.hpp"

using namespace argminci;

namespace {

SampleMatrix random_matrix(int n, int p, std::uint64_t seed) {
  RngStream rng(seed);
  Eigen::MatrixXd values(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) values(i, j) = rng.normal();
  return SampleMatrix::from_values(values);
}

errc code_of_task(const SampleMatrix& x, const ArgminTask& task) {
  try {
    (void)confidence_set(x, task);
  } catch (const Error& e) {
    return e.code();
  }
  return errc::bad_config;  // sentinel: no throw
}

}  // namespace

TEST_CASE("hand-worked statistic with a single competitor") {
  Eigen::MatrixXd values(4, 2);
  values << 2, 0, 1, 0, 3, 0, 2, 0;
  SampleMatrix x = SampleMatrix::from_values(values);
  FoldScheme s = fold_partition(4, 2);

  // D = (2,1,3,2), sigma^2_out = 0.5, T_1 = 8 / (2 sqrt(0.5)) = 4 sqrt(2).
  Eigen::VectorXd d = competitor_differences(x, 0, s, 1.0);
  for (int i = 0; i < 4; ++i)
    CHECK(d(i) == doctest::Approx(values(i, 0)).epsilon(1e-14));
  const double sigma = std::sqrt(variance_out(d));
  CHECK(test_statistic(x, 0, s, 1.0, sigma) ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));

  ArgminTask task;
  task.alpha = 0.05;
  task.folds = 2;
  task.lambda_mode = LambdaMode::fixed;
  task.lambda = 1.0;
  ConfidenceResult r = confidence_set(x, task);
  CHECK(r.confidence_set == std::vector<int>{2});
  CHECK(r.z_critical == doctest::Approx(1.6448536269514722).epsilon(1e-9));
  REQUIRE(r.dimensions.size() == 2);
  CHECK(r.dimensions[0].statistic ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.dimensions[1].statistic ==
        doctest::Approx(-4.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(r.dimensions[0].included);
  CHECK(r.dimensions[1].included);
}

TEST_CASE("antisymmetric two-by-two gives zero statistics") {
  Eigen::MatrixXd values(2, 2);
  values << 1, 0, 0, 1;
  SampleMatrix x = SampleMatrix::from_values(values);
  FoldScheme s = fold_partition(2, 2);
  for (int r = 0; r < 2; ++r)
    CHECK(test_statistic(x, r, s, 0.7, 1.0) == doctest::Approx(0.0));

  ArgminTask task;
  task.lambda_mode = LambdaMode::fixed;
  task.lambda = 0.7;
  ConfidenceResult res = confidence_set(x, task);
  CHECK(res.confidence_set == std::vector<int>{1, 2});
}

TEST_CASE("column permutation maps the confidence set at fixed lambda") {
  SampleMatrix x = random_matrix(8, 4, 91);
  const std::vector<int> perm{2, 0, 3, 1};  // new column j = old perm[j]
  Eigen::MatrixXd shuffled(8, 4);
  for (int j = 0; j < 4; ++j) shuffled.col(j) = x.values.col(perm[j]);
  SampleMatrix y = SampleMatrix::from_values(shuffled);

  ArgminTask task;
  task.lambda_mode = LambdaMode::fixed;
  task.lambda = 0.9;
  ConfidenceResult rx = confidence_set(x, task);
  ConfidenceResult ry = confidence_set(y, task);

  std::vector<int> mapped;
  for (int j = 0; j < 4; ++j)
    if (std::count(rx.confidence_set.begin(), rx.confidence_set.end(),
                   perm[j] + 1))
      mapped.push_back(j + 1);
  CHECK(ry.confidence_set == mapped);
  for (int j = 0; j < 4; ++j)
    CHECK(ry.dimensions[j].statistic ==
          doctest::Approx(rx.dimensions[perm[j]].statistic).epsilon(1e-12));
}

TEST_CASE("automatic tuning is reproducible for a fixed seed") {
  SampleMatrix x = random_matrix(20, 4, 5);
  ArgminTask task;
  task.lambda_mode = LambdaMode::auto_per_dimension;
  task.seed = 17;
  ConfidenceResult a = confidence_set(x, task);
  ConfidenceResult b = confidence_set(x, task);
  CHECK(a.confidence_set == b.confidence_set);
  for (int j = 0; j < 4; ++j) {
    CHECK(a.dimensions[j].lambda == b.dimensions[j].lambda);
    CHECK(a.dimensions[j].statistic == b.dimensions[j].statistic);
  }
}

TEST_CASE("global tuning applies one shared temperature") {
  SampleMatrix x = random_matrix(20, 4, 23);
  ArgminTask task;
  task.lambda_mode = LambdaMode::auto_global;
  task.seed = 3;
  ConfidenceResult r = confidence_set(x, task);
  const double shared = r.dimensions[0].lambda;
  double smallest = shared;
  for (const auto& dim : r.dimensions) {
    CHECK(dim.lambda == shared);
    smallest = std::min(smallest, dim.lambda);
  }

  // The shared value is the smallest of the per-dimension selections run
  // with the same derived streams.
  ArgminTask per = task;
  per.lambda_mode = LambdaMode::auto_per_dimension;
  ConfidenceResult rp = confidence_set(x, per);
  double expected = rp.dimensions[0].lambda;
  for (const auto& dim : rp.dimensions)
    expected = std::min(expected, dim.lambda);
  CHECK(shared == expected);
}

TEST_CASE("task validation rejects malformed requests") {
  SampleMatrix x = random_matrix(8, 3, 2);
  ArgminTask task;
  task.lambda_mode = LambdaMode::fixed;
  task.lambda = 1.0;

  ArgminTask bad = task;
  bad.alpha = 1.0;
  CHECK(code_of_task(x, bad) == errc::bad_argument);
  bad.alpha = -0.01;
  CHECK(code_of_task(x, bad) == errc::bad_argument);

  bad = task;
  bad.lambda = -2.0;
  CHECK(code_of_task(x, bad) == errc::bad_argument);

  bad = task;
  bad.folds = 8;
  bad.variance = VarianceKind::in_fold;
  CHECK(code_of_task(x, bad) == errc::loo_forbidden);

  bad = task;
  bad.folds = 5;
  CHECK(code_of_task(x, bad) == errc::non_divisible);

  bad = task;
  bad.pair_budget = 0;
  CHECK(code_of_task(x, bad) == errc::bad_argument);

  // alpha = 0 keeps every dimension: the gate is T_r < +inf.
  ArgminTask all = task;
  all.alpha = 0.0;
  CHECK(confidence_set(x, all).confidence_set == std::vector<int>{1, 2, 3});
}

TEST_CASE("degenerate variance policy") {
  Eigen::MatrixXd values(4, 2);
  values << 1, 2, 1, 2, 1, 2, 1, 2;
  SampleMatrix x = SampleMatrix::from_values(values);
  ArgminTask task;
  task.lambda_mode = LambdaMode::fixed;
  task.lambda = 0.0;

  task.degenerate = DegeneratePolicy::error;
  CHECK(code_of_task(x, task) == errc::degenerate_variance);

  task.degenerate = DegeneratePolicy::conservative_include;
  ConfidenceResult r = confidence_set(x, task);
  CHECK(r.confidence_set == std::vector<int>{1, 2});
  CHECK(r.dimensions[0].degenerate);
  CHECK(std::isnan(r.dimensions[0].statistic));
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("requested competitors are returned per row") {
  Eigen::MatrixXd values(4, 2);
  values << 2, 0, 1, 0, 3, 0, 2, 0;
  SampleMatrix x = SampleMatrix::from_values(values);
  ArgminTask task;
  task.lambda_mode = LambdaMode::fixed;
  task.lambda = 1.0;
  task.keep_competitors = true;
  ConfidenceResult r = confidence_set(x, task);
  REQUIRE(r.dimensions[0].competitors.size() == 4);
  for (double q : r.dimensions[0].competitors) CHECK(q == doctest::Approx(0.0));
  REQUIRE(r.dimensions[1].competitors.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(r.dimensions[1].competitors[static_cast<std::size_t>(i)] ==
          doctest::Approx(values(i, 0)));
}

TEST_CASE("in-fold variance changes only the denominator") {
  SampleMatrix x = random_matrix(12, 3, 77);
  FoldScheme s = fold_partition(12, 3);
  ArgminTask task;
  task.lambda_mode = LambdaMode::fixed;
  task.lambda = 1.3;
  task.folds = 3;

  task.variance = VarianceKind::out;
  ConfidenceResult out = confidence_set(x, task);
  task.variance = VarianceKind::in_fold;
  ConfidenceResult in = confidence_set(x, task);
  for (int r = 0; r < 3; ++r) {
    Eigen::VectorXd d = competitor_differences(x, r, s, 1.3);
    const double ratio = std::sqrt(variance_out(d) / variance_in(d, s));
    CHECK(out.dimensions[r].statistic * ratio ==
          doctest::Approx(in.dimensions[r].statistic).epsilon(1e-10));
  }
}
