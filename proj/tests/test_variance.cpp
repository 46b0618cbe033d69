#include <doctest.h>

#include <Eigen/Dense>

#include "argminci/error.hpp"
#include "argminci/rng.hpp"
#include "argminci/variance.hpp"

using namespace argminci;

TEST_CASE("pooled variance divides by n") {
  Eigen::VectorXd d(4);
  d << 2, 1, 3, 2;
  CHECK(variance_out(d) == doctest::Approx(0.5).epsilon(1e-14));

  Eigen::VectorXd e(2);
  e << 1, -1;
  CHECK(variance_out(e) == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::VectorXd single(1);
  single << 3;
  CHECK_THROWS_AS((void)variance_out(single), Error);
}

TEST_CASE("pooled variance is shift invariant") {
  RngStream rng(19);
  Eigen::VectorXd d(10);
  for (int i = 0; i < 10; ++i) d(i) = rng.normal();
  Eigen::VectorXd shifted = d.array() + 1234.5;
  CHECK(variance_out(shifted) == doctest::Approx(variance_out(d)).epsilon(1e-9));
}

TEST_CASE("within-fold variance averages fold-local sample variances") {
  Eigen::VectorXd d(4);
  d << 2, 1, 3, 2;
  FoldScheme s = fold_partition(4, 2);
  // Folds (2,1) and (3,2): each has sample variance 0.5.
  CHECK(variance_in(d, s) == doctest::Approx(0.5).epsilon(1e-14));

  Eigen::VectorXd e(6);
  e << 0, 2, 4, 4, 4, 10;
  FoldScheme s3 = fold_partition(6, 3);
  // Fold variances 2, 0, 18 with denominator 1 each; mean 20/3.
  CHECK(variance_in(e, s3) == doctest::Approx(20.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("within-fold variance rejects leave-one-out folds") {
  Eigen::VectorXd d(4);
  d << 1, 2, 3, 4;
  try {
    (void)variance_in(d, fold_partition(4, 4));
    FAIL("expected loo_forbidden");
  } catch (const Error& e) {
    CHECK(e.code() == errc::loo_forbidden);
  }
}

TEST_CASE("within-fold variance rejects a mismatched scheme") {
  Eigen::VectorXd d(4);
  d << 1, 2, 3, 4;
  CHECK_THROWS_AS((void)variance_in(d, fold_partition(6, 2)), Error);
}
