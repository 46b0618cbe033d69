#include "argminci/variance.hpp"

#include "argminci/error.hpp"

namespace argminci {

double variance_out(const Eigen::VectorXd& differences) {
  const auto n = differences.size();
  if (n < 2) fail(errc::bad_argument, "need at least 2 differences");
  const double m = differences.mean();
  return (differences.array() - m).square().sum() / static_cast<double>(n);
}

double variance_in(const Eigen::VectorXd& differences, const FoldScheme& scheme) {
  if (differences.size() != scheme.sample_count)
    fail(errc::fold_mismatch, "difference count does not match the fold scheme");
  if (scheme.is_loo())
    fail(errc::loo_forbidden,
         "within-fold variance is identically zero under leave-one-out folds");
  const int m = scheme.fold_size();
  if (m < 2) fail(errc::bad_argument, "folds must hold at least 2 rows");
  double acc = 0.0;
  for (int v = 0; v < scheme.fold_count; ++v) {
    auto seg = differences.segment(scheme.fold_begin(v), m);
    const double fold_mean = seg.mean();
    acc += (seg.array() - fold_mean).square().sum() / static_cast<double>(m - 1);
  }
  return acc / static_cast<double>(scheme.fold_count);
}

}  // namespace argminci
