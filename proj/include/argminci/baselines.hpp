#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "argminci/matrix.hpp"
#include "argminci/stats.hpp"

namespace argminci {

struct BaselineResult {
  std::vector<int> confidence_set;  // 1-based, ascending
  std::vector<double> statistics;   // per dimension
  std::vector<bool> degenerate;
};

// Paired one-sided tests of each dimension against the empirical argmin of
// the others, at level alpha / (p - 1). Degenerate pair spread keeps the
// dimension and flags it.
BaselineResult bonferroni_set(const SampleMatrix& x, double alpha,
                              TieBreak tie_break = TieBreak::lowest_index,
                              std::uint64_t seed = 0);

// Monte-Carlo quantile of eps_r - min_{s != r} eps_s over p IID standard
// normals.
struct GuptaQuantile {
  int dimension_count = 0;
  double level = 0.0;  // 1 - alpha
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
};

GuptaQuantile gupta_quantile(int p, double alpha, std::int64_t replications,
                             std::uint64_t seed);

// Memoizes on (p, alpha, replications, seed); the simulation harness asks
// for the same handful of quantiles thousands of times.
class GuptaQuantileCache {
 public:
  GuptaQuantileCache(std::int64_t replications, std::uint64_t seed)
      : replications_(replications), seed_(seed) {}

  const GuptaQuantile& get(int p, double alpha);

 private:
  std::int64_t replications_;
  std::uint64_t seed_;
  std::map<std::tuple<int, long long>, GuptaQuantile> cache_;
};

// Scaled-mean selection: keep r when
// sqrt(n) * (mu_r / sigma_r - min_{s != r} mu_s / sigma_s) <= quantile.
// sigma: per-dimension known values, or empty to use column sample sds
// (the variant whose nominal level is not attained).
BaselineResult gupta_set(const SampleMatrix& x, double alpha,
                         const std::optional<Eigen::VectorXd>& sigma,
                         GuptaQuantileCache& quantiles);

// Two-step variant: a level 1 - alpha/10 screen, then a second pass whose
// quantile adapts to the screened cardinality. Singleton screens return
// themselves.
BaselineResult futschik_set(const SampleMatrix& x, double alpha,
                            const std::optional<Eigen::VectorXd>& sigma,
                            GuptaQuantileCache& quantiles);

}  // namespace argminci
