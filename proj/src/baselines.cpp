#include "argminci/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "argminci/error.hpp"

namespace argminci {

namespace {
constexpr double kSigmaFloor = 1e-12;

// Quantile cache key folds alpha to a stable integer grid; levels closer
// than 1e-12 share an entry.
long long alpha_key(double alpha) {
  return static_cast<long long>(std::llround(alpha * 1e12));
}
}  // namespace

BaselineResult bonferroni_set(const SampleMatrix& x, double alpha,
                              TieBreak tie_break, std::uint64_t seed) {
  if (!(alpha >= 0.0) || alpha >= 1.0)
    fail(errc::bad_argument, "alpha must lie in [0, 1)");
  const int n = x.rows();
  const int p = x.cols();
  RngStream rng = RngStream::derived(seed, {stream::tie_break});

  Eigen::VectorXd column_means = x.values.colwise().mean().transpose();
  const double z =
      normal_quantile(1.0 - alpha / static_cast<double>(p - 1));

  BaselineResult result;
  result.statistics.resize(static_cast<std::size_t>(p));
  result.degenerate.assign(static_cast<std::size_t>(p), false);
  std::vector<double> others(static_cast<std::size_t>(p - 1));
  for (int r = 0; r < p; ++r) {
    int o = 0;
    for (int s = 0; s < p; ++s)
      if (s != r) others[static_cast<std::size_t>(o++)] = column_means[s];
    int win = empirical_argmin(others, tie_break, &rng);
    const int s_hat = win >= r ? win + 1 : win;

    Eigen::VectorXd d = x.values.col(r) - x.values.col(s_hat);
    const double d_mean = d.mean();
    const double sd = std::sqrt((d.array() - d_mean).square().sum() /
                                static_cast<double>(n - 1));
    bool included;
    double statistic;
    if (sd < kSigmaFloor) {
      result.degenerate[static_cast<std::size_t>(r)] = true;
      statistic = std::numeric_limits<double>::quiet_NaN();
      included = true;
    } else {
      statistic = std::sqrt(static_cast<double>(n)) * d_mean / sd;
      included = statistic < z;
    }
    result.statistics[static_cast<std::size_t>(r)] = statistic;
    if (included) result.confidence_set.push_back(r + 1);
  }
  return result;
}

GuptaQuantile gupta_quantile(int p, double alpha, std::int64_t replications,
                             std::uint64_t seed) {
  if (p < 2) fail(errc::too_few_dimensions, "need at least 2 dimensions");
  if (!(alpha > 0.0) || alpha >= 1.0)
    fail(errc::bad_argument, "alpha must lie in (0, 1)");
  if (replications < 1) fail(errc::bad_argument, "need at least 1 replication");

  RngStream rng = RngStream::derived(seed, {stream::quantile});
  std::vector<double> gaps(static_cast<std::size_t>(replications));
  for (std::int64_t rep = 0; rep < replications; ++rep) {
    // By exchangeability the law of eps_r - min_{s != r} eps_s does not
    // depend on r; draw the reference coordinate first.
    double ref = rng.normal();
    double lo = std::numeric_limits<double>::infinity();
    for (int s = 1; s < p; ++s) lo = std::min(lo, rng.normal());
    gaps[static_cast<std::size_t>(rep)] = ref - lo;
  }
  return GuptaQuantile{p, 1.0 - alpha, replications, seed,
                       empirical_quantile(std::move(gaps), 1.0 - alpha)};
}

const GuptaQuantile& GuptaQuantileCache::get(int p, double alpha) {
  auto key = std::make_tuple(p, alpha_key(alpha));
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, gupta_quantile(p, alpha, replications_, seed_))
             .first;
  return it->second;
}

namespace {

// Scaled means and the per-dimension selection statistic shared by the
// one-step and two-step rules.
struct ScaledStats {
  Eigen::VectorXd ratio;       // mu_s / sigma_s
  std::vector<double> statistic;  // sqrt(n) * (ratio_r - min others)
};

ScaledStats scaled_statistics(const SampleMatrix& x,
                              const std::optional<Eigen::VectorXd>& sigma) {
  const int n = x.rows();
  const int p = x.cols();
  Eigen::VectorXd column_means = x.values.colwise().mean().transpose();
  Eigen::VectorXd scale(p);
  if (sigma) {
    if (sigma->size() != p)
      fail(errc::bad_argument, "sigma length must match column count");
    for (int s = 0; s < p; ++s) {
      if (!((*sigma)[s] > 0.0))
        fail(errc::bad_argument, "known sigma must be positive");
      scale[s] = (*sigma)[s];
    }
  } else {
    for (int s = 0; s < p; ++s) {
      Eigen::VectorXd col = x.values.col(s);
      const double m = col.mean();
      scale[s] = std::sqrt((col.array() - m).square().sum() /
                           static_cast<double>(n - 1));
      if (scale[s] < kSigmaFloor)
        fail(errc::degenerate_variance,
             "column " + std::to_string(s + 1) +
                 " has degenerate spread; cannot scale by its estimate");
    }
  }

  ScaledStats out;
  out.ratio = column_means.array() / scale.array();
  out.statistic.resize(static_cast<std::size_t>(p));
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int r = 0; r < p; ++r) {
    double lo = std::numeric_limits<double>::infinity();
    for (int s = 0; s < p; ++s)
      if (s != r) lo = std::min(lo, out.ratio[s]);
    out.statistic[static_cast<std::size_t>(r)] = root_n * (out.ratio[r] - lo);
  }
  return out;
}

}  // namespace

BaselineResult gupta_set(const SampleMatrix& x, double alpha,
                         const std::optional<Eigen::VectorXd>& sigma,
                         GuptaQuantileCache& quantiles) {
  if (!(alpha > 0.0) || alpha >= 1.0)
    fail(errc::bad_argument, "alpha must lie in (0, 1)");
  ScaledStats stats = scaled_statistics(x, sigma);
  const double q = quantiles.get(x.cols(), alpha).value;

  BaselineResult result;
  result.statistics = stats.statistic;
  result.degenerate.assign(static_cast<std::size_t>(x.cols()), false);
  for (int r = 0; r < x.cols(); ++r)
    if (stats.statistic[static_cast<std::size_t>(r)] <= q)
      result.confidence_set.push_back(r + 1);
  return result;
}

BaselineResult futschik_set(const SampleMatrix& x, double alpha,
                            const std::optional<Eigen::VectorXd>& sigma,
                            GuptaQuantileCache& quantiles) {
  if (!(alpha > 0.0) || alpha >= 1.0)
    fail(errc::bad_argument, "alpha must lie in (0, 1)");
  const double alpha1 = alpha / 10.0;
  const double alpha2 = 1.0 - (1.0 - alpha) / (1.0 - alpha1);

  ScaledStats stats = scaled_statistics(x, sigma);
  const double q1 = quantiles.get(x.cols(), alpha1).value;

  std::vector<int> screened;  // 1-based
  for (int r = 0; r < x.cols(); ++r)
    if (stats.statistic[static_cast<std::size_t>(r)] <= q1)
      screened.push_back(r + 1);

  BaselineResult result;
  result.statistics = stats.statistic;
  result.degenerate.assign(static_cast<std::size_t>(x.cols()), false);
  if (screened.size() <= 1) {
    // One survivor: the second stage would compare against an empty
    // competitor draw, so the screen is the answer.
    result.confidence_set = screened;
    return result;
  }
  // Second stage: same statistics against the quantile for a race among
  // |screened| dimensions (the screened cardinality adapts the threshold).
  const double q2 =
      quantiles.get(static_cast<int>(screened.size()), alpha2).value;
  for (int r1 : screened)
    if (stats.statistic[static_cast<std::size_t>(r1 - 1)] <= q2)
      result.confidence_set.push_back(r1);
  return result;
}

}  // namespace argminci
