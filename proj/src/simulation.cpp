#include "argminci/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "argminci/error.hpp"
#include "argminci/variance.hpp"

namespace argminci {

namespace {

// Runs body(0..count-1) across worker threads; any exception is rethrown
// on the caller once all workers have joined.
void parallel_for(int count, int threads,
                  const std::function<void(int)>& body) {
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<int> MeanLandscape::argmin_set() const {
  std::vector<int> theta;
  const double lo = mu.minCoeff();
  for (int s = 0; s < mu.size(); ++s)
    if (mu[s] == lo) theta.push_back(s);
  return theta;
}

MeanLandscape make_landscape(LandscapeKind kind, int p, double factor,
                             const std::optional<Eigen::VectorXd>& explicit_mu) {
  if (kind != LandscapeKind::explicit_mu && p < 2)
    fail(errc::too_few_dimensions, "need at least 2 dimensions");
  MeanLandscape out;
  out.kind = kind;
  out.factor = factor;
  switch (kind) {
    case LandscapeKind::flat:
      out.mu = Eigen::VectorXd::Zero(p);
      break;
    case LandscapeKind::increasing:
      out.mu.resize(p);
      for (int s = 0; s < p; ++s)
        out.mu[s] = factor * static_cast<double>(s + 1) / static_cast<double>(p);
      break;
    case LandscapeKind::three_tier:
      if (p < 11)
        fail(errc::too_few_dimensions,
             "the three-tier landscape needs at least 11 dimensions");
      out.mu.resize(p);
      for (int s = 0; s < 5; ++s) out.mu[s] = factor;
      for (int s = 5; s < 10; ++s) out.mu[s] = factor * 1.02;
      for (int s = 10; s < p; ++s) out.mu[s] = factor * 10.0;
      break;
    case LandscapeKind::explicit_mu:
      if (!explicit_mu || explicit_mu->size() < 2)
        fail(errc::bad_argument, "explicit landscape needs a mean vector");
      out.mu = *explicit_mu;
      break;
  }
  return out;
}

Eigen::MatrixXd toeplitz_covariance(int p, double rho) {
  if (p < 1) fail(errc::bad_argument, "dimension must be positive");
  if (!(rho > -1.0 && rho < 1.0))
    fail(errc::bad_argument, "correlation must lie in (-1, 1)");
  Eigen::MatrixXd sigma(p, p);
  for (int r = 0; r < p; ++r)
    for (int s = 0; s < p; ++s) sigma(r, s) = std::pow(rho, std::abs(r - s));
  return sigma;
}

GaussianSampler::GaussianSampler(MeanLandscape landscape, double rho)
    : landscape_(std::move(landscape)), rho_(rho) {
  const int p = static_cast<int>(landscape_.mu.size());
  Eigen::MatrixXd sigma = toeplitz_covariance(p, rho);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    sigma.diagonal().array() += 1e-10;
    llt.compute(sigma);
    if (llt.info() != Eigen::Success)
      fail(errc::bad_argument, "covariance is not positive definite");
  }
  chol_ = llt.matrixL();
}

SampleMatrix GaussianSampler::sample(int n, RngStream& rng) const {
  const int p = dimension();
  Eigen::MatrixXd z(n, p);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < p; ++s) z(i, s) = rng.normal();
  Eigen::MatrixXd x;
  if (rho_ == 0.0)
    x = std::move(z);
  else
    x = z * chol_.transpose();
  x.rowwise() += landscape_.mu.transpose();
  return SampleMatrix::from_values(std::move(x));
}

Eigen::VectorXd GaussianSampler::sample_row(RngStream& rng) const {
  const int p = dimension();
  Eigen::VectorXd z(p);
  for (int s = 0; s < p; ++s) z[s] = rng.normal();
  if (rho_ == 0.0) return landscape_.mu + z;
  return landscape_.mu + chol_ * z;
}

Eigen::VectorXd GaussianSampler::sample_mean(int m, RngStream& rng) const {
  if (m < 1) fail(errc::bad_argument, "mean of at least one row");
  const int p = dimension();
  Eigen::VectorXd z(p);
  for (int s = 0; s < p; ++s) z[s] = rng.normal();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  if (rho_ == 0.0) return landscape_.mu + scale * z;
  return landscape_.mu + scale * (chol_ * z);
}

CenteredStatistic centered_statistic(const SampleMatrix& x,
                                     const Eigen::VectorXd& mu, int r,
                                     const FoldScheme& scheme, double lambda,
                                     double sigma) {
  if (mu.size() != x.cols())
    fail(errc::bad_argument, "mean vector length must match column count");
  if (!(sigma > 0.0)) fail(errc::degenerate_variance, "sigma must be positive");
  const int m = scheme.fold_size();
  Eigen::MatrixXd means = all_out_of_fold_means(x, scheme);
  CenteredStatistic out;
  out.centers.resize(static_cast<std::size_t>(scheme.fold_count));
  double acc = 0.0;
  for (int v = 0; v < scheme.fold_count; ++v) {
    WeightProfile profile = exponential_weights(means.col(v), r, lambda, v);
    const double center = mu[r] - profile.weights.dot(mu);
    out.centers[static_cast<std::size_t>(v)] = center;
    auto rows = x.values.middleRows(scheme.fold_begin(v), m);
    acc += (rows.col(r) - rows * profile.weights).sum() -
           static_cast<double>(m) * center;
  }
  out.value = acc / (std::sqrt(static_cast<double>(x.rows())) * sigma);
  return out;
}

double split_statistic(const SampleMatrix& x, const Eigen::VectorXd& mu, int r,
                       const FoldScheme& scheme) {
  if (mu.size() != x.cols())
    fail(errc::bad_argument, "mean vector length must match column count");
  if (r < 0 || r >= x.cols()) fail(errc::bad_argument, "dimension out of range");
  const int n = x.rows();
  Eigen::MatrixXd means = all_out_of_fold_means(x, scheme);
  Eigen::VectorXd k(n);
  std::vector<double> others(static_cast<std::size_t>(x.cols() - 1));
  for (int v = 0; v < scheme.fold_count; ++v) {
    int o = 0;
    for (int s = 0; s < x.cols(); ++s)
      if (s != r) others[static_cast<std::size_t>(o++)] = means(s, v);
    int win = empirical_argmin(others, TieBreak::lowest_index, nullptr);
    const int s_hat = win >= r ? win + 1 : win;
    for (int i = scheme.fold_begin(v); i < scheme.fold_end(v); ++i)
      k[i] = x.values(i, r) - x.values(i, s_hat) - (mu[r] - mu[s_hat]);
  }
  const double sd = std::sqrt(variance_out(k));
  if (sd < 1e-12)
    fail(errc::degenerate_variance, "centered differences have no spread");
  return k.sum() / (std::sqrt(static_cast<double>(n)) * sd);
}

double nosplit_weighted_statistic(const SampleMatrix& x,
                                  const Eigen::VectorXd& mu, int r,
                                  double lambda) {
  if (mu.size() != x.cols())
    fail(errc::bad_argument, "mean vector length must match column count");
  Eigen::VectorXd column_means = x.values.colwise().mean().transpose();
  WeightProfile profile = exponential_weights(column_means, r, lambda, 0);
  const double center = mu[r] - profile.weights.dot(mu);
  Eigen::VectorXd k =
      (x.values.col(r) - x.values * profile.weights).array() - center;
  const double sd = std::sqrt(variance_out(k));
  if (sd < 1e-12)
    fail(errc::degenerate_variance, "centered differences have no spread");
  return k.sum() / (std::sqrt(static_cast<double>(x.rows())) * sd);
}

namespace {

// K_i for one fold's out-of-fold column sums; the kernel every stability
// operator perturbs.
double stability_kernel(const Eigen::VectorXd& out_sums, double out_count,
                        const Eigen::RowVectorXd& row_i,
                        const Eigen::VectorXd& mu, int r, double lambda) {
  WeightProfile profile =
      exponential_weights(out_sums / out_count, r, lambda, 0);
  const double q = row_i * profile.weights;
  const double center = mu[r] - profile.weights.dot(mu);
  return row_i[r] - q - center;
}

}  // namespace

StabilityDifferences stability_differences(
    const SampleMatrix& x, const Eigen::VectorXd& mu, int r,
    const FoldScheme& scheme, double lambda, int i, int j, int l,
    const Eigen::VectorXd& replacement_j, const Eigen::VectorXd& replacement_l) {
  if (mu.size() != x.cols())
    fail(errc::bad_argument, "mean vector length must match column count");
  if (i == j || i == l || j == l)
    fail(errc::index_clash, "rows i, j, l must be mutually distinct");
  const int v = scheme.fold_of(i);
  if (scheme.fold_of(j) == v || scheme.fold_of(l) == v)
    fail(errc::index_clash,
         "replaced rows must lie outside the fold of the evaluated row");
  if (replacement_j.size() != x.cols() || replacement_l.size() != x.cols())
    fail(errc::bad_argument, "replacement rows must have one value per column");

  const double out = static_cast<double>(scheme.out_count());
  Eigen::VectorXd sums =
      all_out_of_fold_means(x, scheme).col(v) * out;
  const Eigen::RowVectorXd row_i = x.values.row(i);

  const double k_base = stability_kernel(sums, out, row_i, mu, r, lambda);
  Eigen::VectorXd sums_j = sums - x.values.row(j).transpose() + replacement_j;
  const double k_j = stability_kernel(sums_j, out, row_i, mu, r, lambda);
  Eigen::VectorXd sums_l = sums - x.values.row(l).transpose() + replacement_l;
  const double k_l = stability_kernel(sums_l, out, row_i, mu, r, lambda);
  Eigen::VectorXd sums_jl = sums_j - x.values.row(l).transpose() + replacement_l;
  const double k_jl = stability_kernel(sums_jl, out, row_i, mu, r, lambda);

  const double grad1 = k_base - k_j;
  const double grad2 = k_base - k_j - (k_l - k_jl);
  return StabilityDifferences{grad1 * grad1, grad2 * grad2};
}

StabilitySample perturb_stability(const GaussianSampler& sampler, int n,
                                  double lambda, int folds, int r, int reps,
                                  std::uint64_t seed) {
  FoldScheme scheme = fold_partition(n, folds);
  if (scheme.out_count() < 2)
    fail(errc::insufficient_samples,
         "need two out-of-fold rows to perturb independently");
  if (reps < 1) fail(errc::bad_argument, "need at least one repetition");

  StabilitySample out;
  out.sample_count = n;
  out.lambda = lambda;
  out.grad1_sq.resize(static_cast<std::size_t>(reps));
  out.grad2_sq.resize(static_cast<std::size_t>(reps));
  const Eigen::VectorXd& mu = sampler.landscape().mu;
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng = RngStream::derived(
        seed, {stream::data, static_cast<std::uint64_t>(rep)});
    SampleMatrix x = sampler.sample(n, rng);
    const int i = static_cast<int>(rng.uniform_int(0, n - 1));
    const int v = scheme.fold_of(i);
    const int out_rows = scheme.out_count();
    int pos_j = static_cast<int>(rng.uniform_int(0, out_rows - 1));
    int pos_l = static_cast<int>(rng.uniform_int(0, out_rows - 2));
    if (pos_l >= pos_j) ++pos_l;
    auto to_row = [&](int pos) {
      return pos < scheme.fold_begin(v) ? pos : pos + scheme.fold_size();
    };
    Eigen::VectorXd rep_j = sampler.sample_row(rng);
    Eigen::VectorXd rep_l = sampler.sample_row(rng);
    StabilityDifferences d =
        stability_differences(x, mu, r, scheme, lambda, i, to_row(pos_j),
                              to_row(pos_l), rep_j, rep_l);
    out.grad1_sq[static_cast<std::size_t>(rep)] = d.grad1_sq;
    out.grad2_sq[static_cast<std::size_t>(rep)] = d.grad2_sq;
  }
  out.mean_grad1_sq = mean(out.grad1_sq);
  out.mean_grad2_sq = mean(out.grad2_sq);
  return out;
}

ConfusionSummary confusion_set_size(const Eigen::VectorXd& mu, int r,
                                    double lambda, int folds) {
  if (r < 0 || r >= mu.size()) fail(errc::bad_argument, "dimension out of range");
  if (!(lambda > 0.0)) fail(errc::bad_argument, "lambda must be positive");
  if (folds < 2) fail(errc::bad_fold_count, "fold count must be at least 2");
  const double mu_min = mu.minCoeff();
  ConfusionSummary out;
  out.alpha_n = (mu[r] - mu_min) * lambda / 2.0;
  out.beta_n = 4.0 * (std::log(static_cast<double>(mu.size())) +
                      3.0 * std::sqrt(std::log(static_cast<double>(folds))));
  for (int s = 0; s < mu.size(); ++s) {
    if (s == r) continue;
    const double gap = mu[s] - mu_min;
    if (gap > out.alpha_n / lambda && gap <= out.beta_n / lambda) ++out.count;
  }
  return out;
}

double sigma_mc_oracle(const GaussianSampler& sampler, int n, int folds, int r,
                       double lambda, std::int64_t reps, std::uint64_t seed) {
  FoldScheme scheme = fold_partition(n, folds);
  if (reps < 2) fail(errc::bad_argument, "need at least two replicates");
  RngStream rng = RngStream::derived(seed, {stream::oracle});
  double acc = 0.0, acc2 = 0.0;
  for (std::int64_t rep = 0; rep < reps; ++rep) {
    Eigen::VectorXd mu_hat = sampler.sample_mean(scheme.out_count(), rng);
    WeightProfile profile = exponential_weights(mu_hat, r, lambda, 0);
    Eigen::VectorXd row = sampler.sample_row(rng);
    const double d = row[r] - profile.weights.dot(row);
    acc += d;
    acc2 += d * d;
  }
  const double nrep = static_cast<double>(reps);
  const double var = (acc2 - acc * acc / nrep) / (nrep - 1.0);
  return std::sqrt(std::max(var, 0.0));
}

double lto_mc_oracle(const SampleMatrix& x, const GaussianSampler& sampler,
                     int r, const FoldScheme& scheme, double lambda,
                     int pair_budget, std::uint64_t seed) {
  if (pair_budget < 1) fail(errc::bad_argument, "pair budget must be positive");
  const int n = x.rows();
  const int out = scheme.out_count();
  const double out_d = static_cast<double>(out);
  RngStream rng = RngStream::derived(seed, {stream::oracle});
  Eigen::MatrixXd fold_sums = all_out_of_fold_means(x, scheme) * out_d;
  const Eigen::VectorXd& mu = sampler.landscape().mu;

  double acc = 0.0;
  for (int t = 0; t < pair_budget; ++t) {
    const int j = static_cast<int>(rng.uniform_int(0, n - 1));
    const int v = scheme.fold_of(j);
    int pos = static_cast<int>(rng.uniform_int(0, out - 1));
    const int i = pos < scheme.fold_begin(v) ? pos : pos + scheme.fold_size();
    Eigen::VectorXd replacement = sampler.sample_row(rng);

    WeightProfile base =
        exponential_weights(fold_sums.col(v) / out_d, r, lambda, v);
    Eigen::VectorXd swapped_sums =
        fold_sums.col(v) - x.values.row(i).transpose() + replacement;
    WeightProfile swapped =
        exponential_weights(swapped_sums / out_d, r, lambda, v);
    const double grad = (swapped.weights - base.weights)
                            .dot(x.values.row(j).transpose() - mu);
    acc += grad * grad;
  }
  return acc / static_cast<double>(pair_budget);
}

const char* method_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::proposed: return "proposed";
    case MethodKind::bonferroni: return "bonferroni";
    case MethodKind::gupta: return "gupta";
    case MethodKind::futschik: return "futschik";
    case MethodKind::futschik_estimated_sigma: return "futschik-estimated-sigma";
    case MethodKind::gupta_estimated_sigma: return "gupta-estimated-sigma";
  }
  return "unknown";
}

std::optional<MethodKind> parse_method(const std::string& name) {
  if (name == "proposed") return MethodKind::proposed;
  if (name == "bonferroni") return MethodKind::bonferroni;
  if (name == "gupta") return MethodKind::gupta;
  if (name == "futschik") return MethodKind::futschik;
  if (name == "futschik-estimated-sigma")
    return MethodKind::futschik_estimated_sigma;
  if (name == "gupta-estimated-sigma") return MethodKind::gupta_estimated_sigma;
  return std::nullopt;
}

namespace {

// Thread-safe facade over the quantile cache; second-stage cardinalities
// are only known per repetition.
class SharedQuantiles {
 public:
  SharedQuantiles(std::int64_t replications, std::uint64_t seed)
      : cache_(replications, seed) {}

  GuptaQuantileCache& locked_cache() { return cache_; }
  std::mutex& mutex() { return mutex_; }

 private:
  GuptaQuantileCache cache_;
  std::mutex mutex_;
};

struct RepOutcome {
  // Indexed method -> dimension.
  std::vector<std::vector<bool>> included;
  std::vector<std::vector<double>> statistics;
  std::vector<std::vector<double>> lambdas;
  std::vector<std::string> errors;
  std::string digest;
  double max_center = -std::numeric_limits<double>::infinity();
  long center_count = 0;
};

}  // namespace

ExperimentResults run_experiment(const ExperimentConfig& config) {
  const int p = static_cast<int>(config.landscape.mu.size());
  if (p < 2) fail(errc::too_few_dimensions, "need at least 2 dimensions");
  if (config.repetitions < 1)
    fail(errc::bad_argument, "need at least one repetition");
  if (config.methods.empty()) fail(errc::bad_argument, "no methods requested");
  FoldScheme scheme = fold_partition(config.n, config.folds);

  GaussianSampler sampler(config.landscape, config.rho);
  std::vector<int> theta = config.landscape.argmin_set();
  std::vector<bool> in_theta(static_cast<std::size_t>(p), false);
  for (int s : theta) in_theta[static_cast<std::size_t>(s)] = true;

  SharedQuantiles quantiles(config.quantile_replications,
                            derive_seed(config.seed, {stream::quantile}));
  const Eigen::VectorXd known_sigma = Eigen::VectorXd::Ones(p);
  const int method_count = static_cast<int>(config.methods.size());
  std::vector<RepOutcome> outcomes(
      static_cast<std::size_t>(config.repetitions));

  auto run_one = [&](int rep) {
    RepOutcome& out = outcomes[static_cast<std::size_t>(rep)];
    out.included.assign(static_cast<std::size_t>(method_count),
                        std::vector<bool>(static_cast<std::size_t>(p), false));
    out.statistics.assign(static_cast<std::size_t>(method_count),
                          std::vector<double>(static_cast<std::size_t>(p), 0.0));
    out.lambdas.assign(static_cast<std::size_t>(method_count),
                       std::vector<double>(static_cast<std::size_t>(p), 0.0));
    out.errors.assign(static_cast<std::size_t>(method_count), "");

    RngStream data_rng = RngStream::derived(
        config.seed, {stream::data, static_cast<std::uint64_t>(rep)});
    SampleMatrix x = sampler.sample(config.n, data_rng);
    out.digest = matrix_digest(x);

    for (int m = 0; m < method_count; ++m) {
      const MethodKind kind = config.methods[static_cast<std::size_t>(m)];
      auto& inc = out.included[static_cast<std::size_t>(m)];
      auto& stats = out.statistics[static_cast<std::size_t>(m)];
      auto& lams = out.lambdas[static_cast<std::size_t>(m)];
      try {
        if (kind == MethodKind::proposed) {
          ArgminTask task;
          task.alpha = config.alpha;
          task.folds = config.folds;
          task.lambda_mode = config.lambda_mode;
          task.lambda = config.lambda;
          task.variance = config.variance;
          task.degenerate = DegeneratePolicy::conservative_include;
          task.seed = derive_seed(config.seed,
                                  {stream::tuning, static_cast<std::uint64_t>(rep)});
          ConfidenceResult res = confidence_set(x, task);
          for (int s = 0; s < p; ++s) {
            const auto& dim = res.dimensions[static_cast<std::size_t>(s)];
            inc[static_cast<std::size_t>(s)] = dim.included;
            stats[static_cast<std::size_t>(s)] = dim.statistic;
            lams[static_cast<std::size_t>(s)] = dim.lambda;
          }
          if (config.track_centers) {
            Eigen::MatrixXd means = all_out_of_fold_means(x, scheme);
            for (int s : theta) {
              for (int v = 0; v < scheme.fold_count; ++v) {
                WeightProfile profile = exponential_weights(
                    means.col(v), s, lams[static_cast<std::size_t>(s)], v);
                const double center =
                    config.landscape.mu[s] -
                    profile.weights.dot(config.landscape.mu);
                out.max_center = std::max(out.max_center, center);
                ++out.center_count;
              }
            }
          }
        } else {
          BaselineResult res;
          if (kind == MethodKind::bonferroni) {
            res = bonferroni_set(x, config.alpha);
          } else {
            std::optional<Eigen::VectorXd> sigma;
            if (kind == MethodKind::gupta || kind == MethodKind::futschik)
              sigma = known_sigma;
            std::lock_guard<std::mutex> lock(quantiles.mutex());
            if (kind == MethodKind::gupta ||
                kind == MethodKind::gupta_estimated_sigma)
              res = gupta_set(x, config.alpha, sigma, quantiles.locked_cache());
            else
              res = futschik_set(x, config.alpha, sigma,
                                 quantiles.locked_cache());
          }
          for (int s1 : res.confidence_set)
            inc[static_cast<std::size_t>(s1 - 1)] = true;
          for (int s = 0; s < p; ++s)
            stats[static_cast<std::size_t>(s)] =
                res.statistics[static_cast<std::size_t>(s)];
        }
      } catch (const Error& e) {
        out.errors[static_cast<std::size_t>(m)] = e.what();
      }
    }
  };

  parallel_for(config.repetitions, config.threads, run_one);

  ExperimentResults results;
  results.config = config;
  results.digests.reserve(static_cast<std::size_t>(config.repetitions));
  results.records.reserve(static_cast<std::size_t>(config.repetitions) *
                          static_cast<std::size_t>(method_count) *
                          static_cast<std::size_t>(p));
  results.max_center = -std::numeric_limits<double>::infinity();

  std::vector<MethodSummary> summaries(static_cast<std::size_t>(method_count));
  std::vector<std::vector<long>> keep_counts(
      static_cast<std::size_t>(method_count),
      std::vector<long>(static_cast<std::size_t>(p), 0));
  std::vector<long> ok_reps(static_cast<std::size_t>(method_count), 0);
  std::vector<long> false_negatives(static_cast<std::size_t>(method_count), 0);

  for (int rep = 0; rep < config.repetitions; ++rep) {
    const RepOutcome& out = outcomes[static_cast<std::size_t>(rep)];
    results.digests.push_back(out.digest);
    if (out.center_count > 0) {
      results.max_center = std::max(results.max_center, out.max_center);
      results.center_count += out.center_count;
    }
    for (int m = 0; m < method_count; ++m) {
      if (!out.errors[static_cast<std::size_t>(m)].empty()) {
        ++summaries[static_cast<std::size_t>(m)].failed_repetitions;
        summaries[static_cast<std::size_t>(m)].errors.push_back(
            "repetition " + std::to_string(rep + 1) + ": " +
            out.errors[static_cast<std::size_t>(m)]);
        continue;
      }
      ++ok_reps[static_cast<std::size_t>(m)];
      for (int s = 0; s < p; ++s) {
        const bool inc = out.included[static_cast<std::size_t>(m)]
                                     [static_cast<std::size_t>(s)];
        if (inc) {
          ++keep_counts[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)];
          if (!in_theta[static_cast<std::size_t>(s)])
            ++false_negatives[static_cast<std::size_t>(m)];
        }
        results.records.push_back(InclusionRecord{
            rep + 1, config.methods[static_cast<std::size_t>(m)], s + 1, inc,
            in_theta[static_cast<std::size_t>(s)],
            out.statistics[static_cast<std::size_t>(m)]
                          [static_cast<std::size_t>(s)],
            out.lambdas[static_cast<std::size_t>(m)]
                       [static_cast<std::size_t>(s)]});
      }
    }
  }

  for (int m = 0; m < method_count; ++m) {
    MethodSummary& summary = summaries[static_cast<std::size_t>(m)];
    summary.method = config.methods[static_cast<std::size_t>(m)];
    summary.inclusion_rate.assign(static_cast<std::size_t>(p), 0.0);
    const double denom = std::max<long>(ok_reps[static_cast<std::size_t>(m)], 1);
    for (int s = 0; s < p; ++s)
      summary.inclusion_rate[static_cast<std::size_t>(s)] =
          static_cast<double>(
              keep_counts[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)]) /
          denom;
    double nu = 0.0;
    for (int s : theta) nu += summary.inclusion_rate[static_cast<std::size_t>(s)];
    summary.nu_bar = nu / static_cast<double>(theta.size());
    summary.mean_false_negatives =
        static_cast<double>(false_negatives[static_cast<std::size_t>(m)]) / denom;
  }
  results.summaries = std::move(summaries);
  if (results.center_count == 0) results.max_center = 0.0;
  return results;
}

ExperimentResults run_coverage(const ExperimentConfig& config) {
  return run_experiment(config);
}

ExperimentResults run_power(const ExperimentConfig& config) {
  if (static_cast<int>(config.landscape.argmin_set().size()) ==
      config.landscape.mu.size())
    fail(errc::flat_landscape,
         "power runs need a landscape with non-argmin dimensions");
  return run_experiment(config);
}

std::vector<MaxCheckRow> gaussian_max_check(double sigma,
                                            const std::vector<int>& n_values,
                                            std::int64_t reps,
                                            std::uint64_t seed) {
  if (!(sigma > 0.0)) fail(errc::bad_argument, "sigma must be positive");
  if (reps < 2) fail(errc::bad_argument, "need at least two replicates");
  std::vector<MaxCheckRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    if (n < 1) fail(errc::bad_argument, "n must be positive");
    RngStream rng =
        RngStream::derived(seed, {stream::data, static_cast<std::uint64_t>(n)});
    double acc = 0.0, acc2 = 0.0;
    for (std::int64_t rep = 0; rep < reps; ++rep) {
      double hi = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) hi = std::max(hi, sigma * rng.normal());
      acc += hi;
      acc2 += hi * hi;
    }
    const double nrep = static_cast<double>(reps);
    MaxCheckRow row;
    row.n = n;
    row.mean = acc / nrep;
    row.std_error =
        std::sqrt(std::max((acc2 - acc * acc / nrep) / (nrep - 1.0), 0.0) / nrep);
    const double log_n = std::log(static_cast<double>(n));
    row.lower = sigma * std::sqrt(log_n / (std::numbers::pi * std::numbers::ln2));
    row.upper = sigma * std::sqrt(2.0 * log_n);
    row.ok = row.mean >= row.lower - 3.0 * row.std_error &&
             row.mean <= row.upper + 3.0 * row.std_error;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace argminci
