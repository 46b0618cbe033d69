#pragma once

#include <Eigen/Dense>

#include "argminci/folds.hpp"

namespace argminci {

enum class VarianceKind { out, in_fold };

// Pooled estimator: mean squared deviation of the differences around their
// overall mean, divided by n (not n-1).
double variance_out(const Eigen::VectorXd& differences);

// Within-fold estimator: average over folds of the fold-local sample
// variance (denominator n/V - 1). Forbidden for leave-one-out folds,
// where it is identically zero.
double variance_in(const Eigen::VectorXd& differences, const FoldScheme& scheme);

}  // namespace argminci
