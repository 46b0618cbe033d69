#include "argminci/weights.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "argminci/error.hpp"

namespace argminci {

Eigen::VectorXd out_of_fold_mean(const SampleMatrix& x, const FoldScheme& scheme,
                                 int v) {
  if (scheme.sample_count != x.rows())
    fail(errc::fold_mismatch, "fold scheme built for a different sample count");
  if (v < 0 || v >= scheme.fold_count)
    fail(errc::bad_argument, "fold index out of range");
  const int begin = scheme.fold_begin(v);
  const int size = scheme.fold_size();
  Eigen::VectorXd sum = x.values.colwise().sum().transpose() -
                        x.values.middleRows(begin, size).colwise().sum().transpose();
  return sum / static_cast<double>(scheme.out_count());
}

Eigen::MatrixXd all_out_of_fold_means(const SampleMatrix& x,
                                      const FoldScheme& scheme) {
  if (scheme.sample_count != x.rows())
    fail(errc::fold_mismatch, "fold scheme built for a different sample count");
  const int p = x.cols();
  const int m = scheme.fold_size();
  Eigen::VectorXd total = x.values.colwise().sum().transpose();
  Eigen::MatrixXd means(p, scheme.fold_count);
  for (int v = 0; v < scheme.fold_count; ++v) {
    means.col(v) =
        (total -
         x.values.middleRows(scheme.fold_begin(v), m).colwise().sum().transpose()) /
        static_cast<double>(scheme.out_count());
  }
  return means;
}

WeightProfile exponential_weights(const Eigen::VectorXd& mu, int excluded,
                                  double lambda, int fold) {
  const int p = static_cast<int>(mu.size());
  if (p < 2) fail(errc::bad_argument, "need at least 2 dimensions");
  if (excluded < 0 || excluded >= p)
    fail(errc::bad_argument, "excluded dimension out of range");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    fail(errc::bad_argument, "lambda must be finite and nonnegative");

  // Subtract the competitor minimum before scaling by lambda; the largest
  // exponent is then exactly 0 and a constant shift of mu cancels.
  double lo = std::numeric_limits<double>::infinity();
  for (int s = 0; s < p; ++s)
    if (s != excluded) lo = std::min(lo, mu[s]);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
  double total = 0.0;
  for (int s = 0; s < p; ++s) {
    if (s == excluded) continue;
    w[s] = std::exp(-lambda * (mu[s] - lo));
    total += w[s];
  }
  w /= total;
  return WeightProfile{excluded, fold, std::move(w)};
}

double weighted_competitor(const SampleMatrix& x, const FoldScheme& scheme,
                           const WeightProfile& profile, int i) {
  if (i < 0 || i >= x.rows()) fail(errc::bad_argument, "row index out of range");
  if (scheme.sample_count != x.rows())
    fail(errc::fold_mismatch, "fold scheme built for a different sample count");
  if (scheme.fold_of(i) != profile.fold)
    fail(errc::fold_mismatch, "row " + std::to_string(i + 1) +
                                  " lies outside the profile's fold " +
                                  std::to_string(profile.fold + 1));
  return x.values.row(i) * profile.weights;
}

}  // namespace argminci
