#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "argminci/baselines.hpp"
#include "argminci/matrix.hpp"
#include "argminci/statistic.hpp"

namespace argminci {

enum class LandscapeKind { flat, increasing, three_tier, explicit_mu };

struct MeanLandscape {
  LandscapeKind kind = LandscapeKind::flat;
  double factor = 0.0;
  Eigen::VectorXd mu;

  // Exact ties: every coordinate equal to the minimum.
  std::vector<int> argmin_set() const;  // 0-based
};

MeanLandscape make_landscape(LandscapeKind kind, int p, double factor,
                             const std::optional<Eigen::VectorXd>& explicit_mu =
                                 std::nullopt);

// Correlation rho^|r - s|, unit diagonal.
Eigen::MatrixXd toeplitz_covariance(int p, double rho);

// Gaussian rows mu + L z with L the lower-triangular factor of Sigma,
// computed once; a failed factorization retries with 1e-10 diagonal jitter.
class GaussianSampler {
 public:
  GaussianSampler(MeanLandscape landscape, double rho);

  SampleMatrix sample(int n, RngStream& rng) const;
  Eigen::VectorXd sample_row(RngStream& rng) const;
  // Exact draw of an m-row average: mu + L z / sqrt(m).
  Eigen::VectorXd sample_mean(int m, RngStream& rng) const;

  const MeanLandscape& landscape() const { return landscape_; }
  double rho() const { return rho_; }
  int dimension() const { return static_cast<int>(landscape_.mu.size()); }

 private:
  MeanLandscape landscape_;
  double rho_;
  Eigen::MatrixXd chol_;
};

// Weighted out-of-fold statistic recentred by the oracle means:
// sum_i (X_ir - Q_ir - d_i) / (sqrt(n) sigma), with per-fold center
// d = mu_r - sum_s w_s mu_s. Nonpositive centers certify r in the argmin set.
struct CenteredStatistic {
  double value = 0.0;
  std::vector<double> centers;  // one per fold
};

CenteredStatistic centered_statistic(const SampleMatrix& x,
                                     const Eigen::VectorXd& mu, int r,
                                     const FoldScheme& scheme, double lambda,
                                     double sigma);

// Hard-argmin variant: each row is compared against the column that
// minimizes its out-of-fold sums (lowest index on ties), centered by the
// mean gap, normalized by the pooled sd of its own centered differences.
double split_statistic(const SampleMatrix& x, const Eigen::VectorXd& mu, int r,
                       const FoldScheme& scheme);

// Non-split variant: weights come from the full-sample mean and are applied
// to every row, so weights and rows share data.
double nosplit_weighted_statistic(const SampleMatrix& x,
                                  const Eigen::VectorXd& mu, int r,
                                  double lambda);

// First/second-order response of K_i = X_ir - Q_ir - d_i to replacing rows
// j (and l) with fresh draws; replacement rows are shared between the single
// and double perturbations.
struct StabilityDifferences {
  double grad1_sq = 0.0;
  double grad2_sq = 0.0;
};

StabilityDifferences stability_differences(
    const SampleMatrix& x, const Eigen::VectorXd& mu, int r,
    const FoldScheme& scheme, double lambda, int i, int j, int l,
    const Eigen::VectorXd& replacement_j, const Eigen::VectorXd& replacement_l);

struct StabilitySample {
  int sample_count = 0;
  double lambda = 0.0;
  std::vector<double> grad1_sq;
  std::vector<double> grad2_sq;
  double mean_grad1_sq = 0.0;
  double mean_grad2_sq = 0.0;
};

StabilitySample perturb_stability(const GaussianSampler& sampler, int n,
                                  double lambda, int folds, int r, int reps,
                                  std::uint64_t seed);

// Count of competitor dimensions whose mean exceeds the minimum by more than
// (mu_r - mu_min) / 2 but at most 4 (log p + 3 sqrt(log V)) / lambda.
struct ConfusionSummary {
  int count = 0;
  double alpha_n = 0.0;
  double beta_n = 0.0;
};

ConfusionSummary confusion_set_size(const Eigen::VectorXd& mu, int r,
                                    double lambda, int folds);

// Monte-Carlo sd of X_1r - Q_1r under the generator: each replicate draws
// fresh out-of-fold means (exact law), forms weights, and a fresh row.
double sigma_mc_oracle(const GaussianSampler& sampler, int n, int folds, int r,
                       double lambda, std::int64_t reps, std::uint64_t seed);

// Direct Monte-Carlo counterpart of the leave-two-out stability estimate on
// a fixed matrix: true replacement draws instead of left-out rows.
double lto_mc_oracle(const SampleMatrix& x, const GaussianSampler& sampler,
                     int r, const FoldScheme& scheme, double lambda,
                     int pair_budget, std::uint64_t seed);

enum class MethodKind {
  proposed,
  bonferroni,
  gupta,
  futschik,
  futschik_estimated_sigma,
  gupta_estimated_sigma,
};

const char* method_name(MethodKind kind);
std::optional<MethodKind> parse_method(const std::string& name);

struct ExperimentConfig {
  MeanLandscape landscape;
  double rho = 0.0;
  int n = 0;
  int folds = 2;
  double alpha = 0.05;
  LambdaMode lambda_mode = LambdaMode::auto_per_dimension;
  double lambda = 0.0;
  VarianceKind variance = VarianceKind::out;
  int repetitions = 0;
  std::uint64_t seed = 0;
  std::vector<MethodKind> methods;
  std::int64_t quantile_replications = 100000;
  int threads = 0;  // 0 = all hardware threads
  bool track_centers = true;
};

// One row per repetition x method x dimension.
struct InclusionRecord {
  int repetition = 0;         // 1-based
  MethodKind method{};
  int dimension = 0;          // 1-based
  bool included = false;
  bool in_argmin = false;
  double statistic = 0.0;
  double lambda = 0.0;        // proposed only, else 0
};

struct MethodSummary {
  MethodKind method{};
  std::vector<double> inclusion_rate;       // per dimension
  double nu_bar = 0.0;                      // mean rate over the argmin set
  double mean_false_negatives = 0.0;        // non-argmin dimensions kept
  int failed_repetitions = 0;
  std::vector<std::string> errors;
};

struct ExperimentResults {
  ExperimentConfig config;
  std::vector<std::string> digests;  // per repetition
  std::vector<InclusionRecord> records;
  std::vector<MethodSummary> summaries;
  // Largest oracle center seen across folds, repetitions and argmin
  // dimensions under the proposed method; nonpositive up to rounding.
  double max_center = 0.0;
  long center_count = 0;
};

ExperimentResults run_experiment(const ExperimentConfig& config);

// nu_bar view of run_experiment for validity studies.
ExperimentResults run_coverage(const ExperimentConfig& config);
// Same driver, but requires a landscape with a nontrivial argmin set.
ExperimentResults run_power(const ExperimentConfig& config);

struct MaxCheckRow {
  int n = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double lower = 0.0;  // sigma sqrt(log n / (pi log 2))
  double upper = 0.0;  // sigma sqrt(2 log n)
  bool ok = false;     // mean inside [lower, upper] with 3 se slack
};

std::vector<MaxCheckRow> gaussian_max_check(double sigma,
                                            const std::vector<int>& n_values,
                                            std::int64_t reps,
                                            std::uint64_t seed);

}  // namespace argminci
