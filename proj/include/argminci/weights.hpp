#pragma once

#include <Eigen/Dense>

#include "argminci/folds.hpp"
#include "argminci/matrix.hpp"

namespace argminci {

// Exponential weights over the competitor dimensions s != excluded,
// attached to the fold whose out-of-fold mean produced them.
struct WeightProfile {
  int excluded;             // dimension left out of the weighting
  int fold;                 // fold the profile belongs to
  Eigen::VectorXd weights;  // length p, weights[excluded] == 0, sums to 1
};

// Mean of the rows outside fold v (all rows share one denominator n - n/V).
Eigen::VectorXd out_of_fold_mean(const SampleMatrix& x, const FoldScheme& scheme,
                                 int v);

// All V out-of-fold means at once, one column per fold; a single pass over
// the matrix instead of one per fold.
Eigen::MatrixXd all_out_of_fold_means(const SampleMatrix& x,
                                      const FoldScheme& scheme);

// softmax of -lambda * mu over s != excluded, max-subtracted in the exponent
// so adding a constant to every mean leaves the weights unchanged.
WeightProfile exponential_weights(const Eigen::VectorXd& mu, int excluded,
                                  double lambda, int fold = 0);

// Convex combination sum_s w_s X(i, s); row i must lie in the profile's fold.
double weighted_competitor(const SampleMatrix& x, const FoldScheme& scheme,
                           const WeightProfile& profile, int i);

}  // namespace argminci
