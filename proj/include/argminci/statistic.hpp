#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "argminci/folds.hpp"
#include "argminci/matrix.hpp"
#include "argminci/tuning.hpp"
#include "argminci/variance.hpp"
#include "argminci/weights.hpp"

namespace argminci {

enum class LambdaMode { fixed, auto_per_dimension, auto_global };
enum class DegeneratePolicy { error, conservative_include };

struct ArgminTask {
  double alpha = 0.05;
  int folds = 2;  // V; pass n for leave-one-out
  LambdaMode lambda_mode = LambdaMode::fixed;
  double lambda = 0.0;  // used when lambda_mode == fixed
  VarianceKind variance = VarianceKind::out;
  TieBreak tie_break = TieBreak::lowest_index;
  DegeneratePolicy degenerate = DegeneratePolicy::error;
  std::uint64_t seed = 0;
  int pair_budget = 100;       // leave-two-out pairs per tuning candidate
  bool keep_competitors = false;
};

struct DimensionReport {
  int dimension = 0;  // 1-based in reports
  std::string label;
  double statistic = 0.0;
  double sigma = 0.0;
  double lambda = 0.0;
  bool included = false;
  bool degenerate = false;
  std::vector<double> competitors;  // per-row Q values when requested
  std::optional<LambdaTrace> trace;
};

struct ConfidenceResult {
  std::vector<int> confidence_set;  // 1-based, ascending
  std::vector<DimensionReport> dimensions;
  double z_critical = 0.0;
  std::vector<std::string> warnings;
};

// Per-row differences X(i, r) - Q(i, r) where Q uses the weights of row i's
// fold. The statistic for dimension r is their sum over sqrt(n) * sigma.
Eigen::VectorXd competitor_differences(const SampleMatrix& x, int r,
                                       const FoldScheme& scheme, double lambda);

double test_statistic(const SampleMatrix& x, int r, const FoldScheme& scheme,
                      double lambda, double sigma_hat);

// Full pipeline: folds, per-dimension lambda resolution, differences,
// variance, one-sided gate T_r < z_{1 - alpha}.
ConfidenceResult confidence_set(const SampleMatrix& x, const ArgminTask& task);

void validate_task(const ArgminTask& task, int n);

}  // namespace argminci
