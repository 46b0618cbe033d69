#include "argminci/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "argminci/error.hpp"

namespace argminci {

namespace {
constexpr double kSigmaFloor = 1e-12;
}

Eigen::VectorXd competitor_differences(const SampleMatrix& x, int r,
                                       const FoldScheme& scheme, double lambda) {
  if (r < 0 || r >= x.cols()) fail(errc::bad_argument, "dimension out of range");
  Eigen::VectorXd d(x.rows());
  const int m = scheme.fold_size();
  Eigen::MatrixXd means = all_out_of_fold_means(x, scheme);
  for (int v = 0; v < scheme.fold_count; ++v) {
    WeightProfile profile = exponential_weights(means.col(v), r, lambda, v);
    auto rows = x.values.middleRows(scheme.fold_begin(v), m);
    d.segment(scheme.fold_begin(v), m) =
        rows.col(r) - rows * profile.weights;
  }
  return d;
}

double test_statistic(const SampleMatrix& x, int r, const FoldScheme& scheme,
                      double lambda, double sigma_hat) {
  if (!(sigma_hat > 0.0))
    fail(errc::degenerate_variance, "sigma must be positive");
  Eigen::VectorXd d = competitor_differences(x, r, scheme, lambda);
  return d.sum() / (std::sqrt(static_cast<double>(x.rows())) * sigma_hat);
}

void validate_task(const ArgminTask& task, int n) {
  if (!(task.alpha >= 0.0) || task.alpha >= 1.0)
    fail(errc::bad_argument, "alpha must lie in [0, 1)");
  if (task.lambda_mode == LambdaMode::fixed &&
      (!std::isfinite(task.lambda) || task.lambda < 0.0))
    fail(errc::bad_argument, "fixed lambda must be finite and nonnegative");
  if (task.variance == VarianceKind::in_fold) {
    if (task.folds == n)
      fail(errc::loo_forbidden,
           "within-fold variance is unavailable with leave-one-out folds");
    if (n / task.folds < 2)
      fail(errc::bad_argument, "within-fold variance needs folds of size >= 2");
  }
  if (task.pair_budget < 1)
    fail(errc::bad_argument, "pair budget must be positive");
}

ConfidenceResult confidence_set(const SampleMatrix& x, const ArgminTask& task) {
  const int n = x.rows();
  const int p = x.cols();
  validate_task(task, n);
  FoldScheme scheme = fold_partition(n, task.folds);

  ConfidenceResult result;
  result.z_critical = normal_quantile(1.0 - task.alpha);
  result.dimensions.resize(static_cast<std::size_t>(p));

  std::vector<LambdaTrace> traces;
  Eigen::VectorXd lambdas(p);
  if (task.lambda_mode == LambdaMode::fixed) {
    lambdas.setConstant(task.lambda);
  } else {
    TuningSchedule schedule = TuningSchedule::for_folds(n, task.folds);
    schedule.pair_budget = task.pair_budget;
    traces.resize(static_cast<std::size_t>(p));
    for (int r = 0; r < p; ++r) {
      traces[static_cast<std::size_t>(r)] = select_lambda(
          x, r, scheme, schedule,
          derive_seed(task.seed, {stream::tuning, static_cast<std::uint64_t>(r)}));
      lambdas[r] = traces[static_cast<std::size_t>(r)].selected;
    }
    if (task.lambda_mode == LambdaMode::auto_global)
      lambdas.setConstant(lambdas.minCoeff());
  }

  for (int r = 0; r < p; ++r) {
    DimensionReport& report = result.dimensions[static_cast<std::size_t>(r)];
    report.dimension = r + 1;
    report.label = x.labels[static_cast<std::size_t>(r)];
    report.lambda = lambdas[r];
    if (!traces.empty()) report.trace = traces[static_cast<std::size_t>(r)];

    Eigen::VectorXd d = competitor_differences(x, r, scheme, lambdas[r]);
    if (task.keep_competitors) {
      report.competitors.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        report.competitors[static_cast<std::size_t>(i)] =
            x.values(i, r) - d[i];
    }
    const double var = task.variance == VarianceKind::out
                           ? variance_out(d)
                           : variance_in(d, scheme);
    report.sigma = std::sqrt(var);
    if (report.sigma < kSigmaFloor) {
      if (task.degenerate == DegeneratePolicy::error)
        fail(errc::degenerate_variance,
             "dimension " + std::to_string(r + 1) +
                 " has degenerate difference spread");
      report.degenerate = true;
      report.included = true;
      report.statistic = std::numeric_limits<double>::quiet_NaN();
      result.warnings.push_back("dimension " + std::to_string(r + 1) +
                                " kept conservatively: degenerate spread");
    } else {
      report.statistic =
          d.sum() / (std::sqrt(static_cast<double>(n)) * report.sigma);
      report.included = report.statistic < result.z_critical;
    }
    if (report.included) result.confidence_set.push_back(r + 1);
  }
  return result;
}

}  // namespace argminci
