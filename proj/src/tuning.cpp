#include "argminci/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "argminci/error.hpp"
#include "argminci/statistic.hpp"
#include "argminci/variance.hpp"
#include "argminci/weights.hpp"

namespace argminci {

TuningSchedule TuningSchedule::for_folds(int n, int V) {
  const double nd = static_cast<double>(n);
  if (V == n) return {0.05, nd, 100, 64};
  if (V == 2) return {0.3, nd * nd, 100, 64};
  if (V == 5) return {0.1, std::pow(nd, 1.5), 100, 64};
  return {0.1, std::pow(nd, 1.5), 100, 64};
}

namespace {

// Position of row i among the rows outside fold v (blocks are contiguous,
// so out rows are [0, begin) followed by [end, n)).
int out_position(const FoldScheme& scheme, int v, int i) {
  return i < scheme.fold_begin(v) ? i : i - scheme.fold_size();
}

int out_row(const FoldScheme& scheme, int v, int position) {
  return position < scheme.fold_begin(v) ? position
                                         : position + scheme.fold_size();
}

// Per-fold argmin over out-of-fold sums with r removed from the race.
std::vector<int> fold_argmins(const Eigen::MatrixXd& fold_means, int r,
                              TieBreak tie_break, RngStream* rng) {
  const int p = static_cast<int>(fold_means.rows());
  std::vector<int> winners(static_cast<std::size_t>(fold_means.cols()));
  std::vector<double> others(static_cast<std::size_t>(p - 1));
  for (int v = 0; v < fold_means.cols(); ++v) {
    int o = 0;
    for (int s = 0; s < p; ++s)
      if (s != r) others[static_cast<std::size_t>(o++)] = fold_means(s, v);
    int win = empirical_argmin(others, tie_break, rng);
    winners[static_cast<std::size_t>(v)] = win >= r ? win + 1 : win;
  }
  return winners;
}

}  // namespace

double lambda0(const SampleMatrix& x, int r, const FoldScheme& scheme,
               TieBreak tie_break, std::uint64_t seed) {
  if (r < 0 || r >= x.cols()) fail(errc::bad_argument, "dimension out of range");
  const int n = x.rows();
  RngStream rng = RngStream::derived(seed, {stream::tie_break});
  Eigen::MatrixXd means = all_out_of_fold_means(x, scheme);
  std::vector<int> winners = fold_argmins(means, r, tie_break, &rng);

  std::vector<double> picked(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    picked[static_cast<std::size_t>(i)] =
        x.values(i, winners[static_cast<std::size_t>(scheme.fold_of(i))]);

  double spread = sample_sd(picked);
  if (spread < 1e-12) {
    // Pooled fallback: root of the average per-column sample variance.
    double pooled = 0.0;
    for (int s = 0; s < x.cols(); ++s) {
      Eigen::VectorXd col = x.values.col(s);
      const double m = col.mean();
      pooled += (col.array() - m).square().sum() / static_cast<double>(n - 1);
    }
    spread = std::sqrt(pooled / static_cast<double>(x.cols()));
    if (spread < 1e-12)
      fail(errc::degenerate_spread,
           "no usable spread for the pilot lambda: all candidate values "
           "and the pooled columns are constant");
  }
  return std::sqrt(static_cast<double>(n)) / (2.5 * spread);
}

double lto_stability_estimate(const SampleMatrix& x, int r,
                              const FoldScheme& scheme, double lambda,
                              int pair_budget, std::uint64_t seed,
                              bool renormalized) {
  if (r < 0 || r >= x.cols()) fail(errc::bad_argument, "dimension out of range");
  if (pair_budget < 1) fail(errc::bad_argument, "pair budget must be positive");
  const int n = x.rows();
  const int out = scheme.out_count();
  if (out < 2)
    fail(errc::insufficient_samples,
         "need at least 2 out-of-fold rows to drop one and compare");

  // Pairs (i, j) with i outside row j's fold, indexed t = j * out + pos(i).
  const long long universe = static_cast<long long>(n) * out;
  RngStream rng(seed);
  std::vector<long long> pairs;
  if (universe <= pair_budget) {
    pairs.resize(static_cast<std::size_t>(universe));
    std::iota(pairs.begin(), pairs.end(), 0ll);
  } else {
    std::unordered_set<long long> chosen;
    chosen.reserve(static_cast<std::size_t>(pair_budget) * 2);
    while (static_cast<int>(chosen.size()) < pair_budget)
      chosen.insert(rng.uniform_int(0, universe - 1));
    pairs.assign(chosen.begin(), chosen.end());
    std::sort(pairs.begin(), pairs.end());
  }

  Eigen::MatrixXd fold_sums =
      all_out_of_fold_means(x, scheme) * static_cast<double>(out);
  Eigen::VectorXd column_means = x.values.colwise().mean().transpose();
  const double denom =
      renormalized ? static_cast<double>(out - 1) : static_cast<double>(out);

  double acc = 0.0;
  Eigen::VectorXd mu_i(x.cols()), mu_k(x.cols());
  for (long long t : pairs) {
    const int j = static_cast<int>(t / out);
    const int v = scheme.fold_of(j);
    const int i = out_row(scheme, v, static_cast<int>(t % out));
    // Companion row k: uniform over the out-of-fold rows other than i.
    int k_pos = static_cast<int>(rng.uniform_int(0, out - 2));
    if (k_pos >= out_position(scheme, v, i)) ++k_pos;
    const int k = out_row(scheme, v, k_pos);

    mu_i = (fold_sums.col(v) - x.values.row(i).transpose()) / denom;
    mu_k = (fold_sums.col(v) - x.values.row(k).transpose()) / denom;
    WeightProfile base = exponential_weights(mu_i, r, lambda, v);
    WeightProfile swapped = exponential_weights(mu_k, r, lambda, v);
    const double grad = (swapped.weights - base.weights)
                            .dot(x.values.row(j).transpose() - column_means);
    acc += grad * grad;
  }
  return acc / static_cast<double>(pairs.size());
}

LambdaTrace select_lambda(const SampleMatrix& x, int r, const FoldScheme& scheme,
                          const TuningSchedule& schedule, std::uint64_t seed,
                          bool renormalized, TieBreak tie_break) {
  LambdaTrace trace;
  trace.dimension = r + 1;
  trace.lambda0 = lambda0(x, r, scheme, tie_break,
                          derive_seed(seed, {stream::tie_break}));
  const double n = static_cast<double>(x.rows());

  double lam = trace.lambda0;
  for (int iter = 0; iter < schedule.max_iterations; ++iter) {
    const double candidate = 2.0 * lam;
    if (candidate >= schedule.phi) break;
    // Candidate streams are indexed by iteration so a longer search reuses
    // the exact estimates of a shorter one.
    const double stability = lto_stability_estimate(
        x, r, scheme, candidate, schedule.pair_budget,
        derive_seed(seed, {stream::pairs, static_cast<std::uint64_t>(iter)}),
        renormalized);
    const double variance_ref =
        variance_out(competitor_differences(x, r, scheme, candidate)) / n;
    const bool accepted = stability <= schedule.epsilon * variance_ref;
    trace.candidates.push_back({candidate, stability, variance_ref, accepted});
    if (!accepted) break;
    lam = candidate;
  }
  trace.selected = lam;
  return trace;
}

}  // namespace argminci
