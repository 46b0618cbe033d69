#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "argminci/baselines.hpp"
#include "argminci/csv.hpp"
#include "argminci/error.hpp"
#include "argminci/report.hpp"
#include "argminci/simulation.hpp"
#include "argminci/statistic.hpp"
#include "argminci/stats.hpp"
#include "argminci/tuning.hpp"

namespace py = pybind11;
using namespace argminci;

namespace {

SampleMatrix matrix_from(const Eigen::MatrixXd& values,
                         const std::vector<std::string>& labels) {
  return SampleMatrix::from_values(values, labels);
}

TieBreak tie_break_from(const std::string& name) {
  if (name == "lowest") return TieBreak::lowest_index;
  if (name == "random") return TieBreak::seeded_random;
  fail(errc::bad_argument, "tie_break expects 'lowest' or 'random'");
}

ArgminTask task_from(double alpha, int folds, const py::object& lambda,
                     const std::string& variance, const std::string& tie_break,
                     const std::string& degenerate, std::uint64_t seed,
                     int pair_budget, bool keep_competitors) {
  ArgminTask task;
  task.alpha = alpha;
  task.folds = folds;
  if (py::isinstance<py::str>(lambda)) {
    const auto text = lambda.cast<std::string>();
    if (text == "auto") task.lambda_mode = LambdaMode::auto_per_dimension;
    else if (text == "auto-global") task.lambda_mode = LambdaMode::auto_global;
    else fail(errc::bad_argument, "lambda expects a number, 'auto' or 'auto-global'");
  } else {
    task.lambda = lambda.cast<double>();
    task.lambda_mode = LambdaMode::fixed;
  }
  if (variance == "out") task.variance = VarianceKind::out;
  else if (variance == "in") task.variance = VarianceKind::in_fold;
  else fail(errc::bad_argument, "variance expects 'out' or 'in'");
  task.tie_break = tie_break_from(tie_break);
  if (degenerate == "error") task.degenerate = DegeneratePolicy::error;
  else if (degenerate == "include")
    task.degenerate = DegeneratePolicy::conservative_include;
  else fail(errc::bad_argument, "degenerate expects 'error' or 'include'");
  task.seed = seed;
  task.pair_budget = pair_budget;
  task.keep_competitors = keep_competitors;
  return task;
}

}  // namespace

PYBIND11_MODULE(_argminci, m) {
  m.doc() = "argmin confidence sets via cross-validated exponential weighting";

  py::register_exception<Error>(m, "ArgminError", PyExc_ValueError);

  m.def("fold_partition",
        [](int n, int folds) {
          FoldScheme scheme = fold_partition(n, folds);
          std::vector<int> assignment(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            assignment[static_cast<std::size_t>(i)] = scheme.fold_of(i);
          return assignment;
        },
        py::arg("n"), py::arg("folds"),
        "fold index of every row under contiguous-block splitting");

  m.def("out_of_fold_mean",
        [](const Eigen::MatrixXd& values, int folds, int fold) {
          SampleMatrix x = matrix_from(values, {});
          return out_of_fold_mean(x, fold_partition(x.rows(), folds), fold);
        },
        py::arg("values"), py::arg("folds"), py::arg("fold"),
        "column means over the rows outside one fold");

  m.def("exponential_weights",
        [](const Eigen::VectorXd& mu, int excluded, double lambda) {
          return exponential_weights(mu, excluded, lambda).weights;
        },
        py::arg("mu"), py::arg("excluded"), py::arg("lambda_"),
        "softmin weights over the competitors of one dimension");

  m.def("competitor_differences",
        [](const Eigen::MatrixXd& values, int r, int folds, double lambda) {
          SampleMatrix x = matrix_from(values, {});
          return competitor_differences(x, r,
                                        fold_partition(x.rows(), folds), lambda);
        },
        py::arg("values"), py::arg("r"), py::arg("folds"), py::arg("lambda_"),
        "per-row gaps between dimension r and its weighted competitor");

  m.def("test_statistic",
        [](const Eigen::MatrixXd& values, int r, int folds, double lambda,
           const std::string& variance) {
          SampleMatrix x = matrix_from(values, {});
          FoldScheme scheme = fold_partition(x.rows(), folds);
          Eigen::VectorXd d = competitor_differences(x, r, scheme, lambda);
          const double var = variance == "in" ? variance_in(d, scheme)
                                              : variance_out(d);
          return test_statistic(x, r, scheme, lambda, std::sqrt(var));
        },
        py::arg("values"), py::arg("r"), py::arg("folds"), py::arg("lambda_"),
        py::arg("variance") = "out",
        "studentized mean gap for one dimension");

  m.def("variance_out", &variance_out, py::arg("d"),
        "population-style variance of the per-row gaps");
  m.def("variance_in",
        [](const Eigen::VectorXd& d, int folds) {
          return variance_in(d, fold_partition(static_cast<int>(d.size()), folds));
        },
        py::arg("d"), py::arg("folds"),
        "average of within-fold sample variances");

  m.def("confidence_set",
        [](const Eigen::MatrixXd& values, const std::vector<std::string>& labels,
           double alpha, int folds, const py::object& lambda,
           const std::string& variance, const std::string& tie_break,
           const std::string& degenerate, std::uint64_t seed, int pair_budget,
           bool keep_competitors) {
          SampleMatrix x = matrix_from(values, labels);
          ArgminTask task =
              task_from(alpha, folds, lambda, variance, tie_break, degenerate,
                        seed, pair_budget, keep_competitors);
          ConfidenceResult result = confidence_set(x, task);
          return analysis_to_json(result, task, x).dump();
        },
        py::arg("values"), py::arg("labels") = std::vector<std::string>{},
        py::arg("alpha") = 0.05, py::arg("folds") = 2,
        py::arg("lambda_") = py::str("auto"), py::arg("variance") = "out",
        py::arg("tie_break") = "lowest", py::arg("degenerate") = "error",
        py::arg("seed") = 0, py::arg("pair_budget") = 100,
        py::arg("keep_competitors") = false,
        "full analysis; returns the JSON report as a string");

  m.def("confidence_set_indices",
        [](const Eigen::MatrixXd& values, double alpha, int folds,
           const py::object& lambda, const std::string& variance,
           std::uint64_t seed) {
          SampleMatrix x = matrix_from(values, {});
          ArgminTask task = task_from(alpha, folds, lambda, variance, "lowest",
                                      "error", seed, 100, false);
          return confidence_set(x, task).confidence_set;
        },
        py::arg("values"), py::arg("alpha") = 0.05, py::arg("folds") = 2,
        py::arg("lambda_") = py::str("auto"), py::arg("variance") = "out",
        py::arg("seed") = 0,
        "1-based dimensions kept in the confidence set");

  m.def("lambda0",
        [](const Eigen::MatrixXd& values, int r, int folds) {
          SampleMatrix x = matrix_from(values, {});
          return lambda0(x, r, fold_partition(x.rows(), folds));
        },
        py::arg("values"), py::arg("r"), py::arg("folds"),
        "spread-matched starting temperature");

  m.def("select_lambda",
        [](const Eigen::MatrixXd& values, int r, int folds, std::uint64_t seed,
           int pair_budget) {
          SampleMatrix x = matrix_from(values, {});
          FoldScheme scheme = fold_partition(x.rows(), folds);
          TuningSchedule schedule = TuningSchedule::for_folds(x.rows(), folds);
          schedule.pair_budget = pair_budget;
          LambdaTrace trace = select_lambda(x, r, scheme, schedule, seed);
          py::dict out;
          out["lambda0"] = trace.lambda0;
          out["selected"] = trace.selected;
          out["candidates"] = trace.candidates.size();
          return out;
        },
        py::arg("values"), py::arg("r"), py::arg("folds"), py::arg("seed") = 0,
        py::arg("pair_budget") = 100,
        "doubling search for the largest stable temperature");

  m.def("lto_stability_estimate",
        [](const Eigen::MatrixXd& values, int r, int folds, double lambda,
           int pair_budget, std::uint64_t seed, bool renormalized) {
          SampleMatrix x = matrix_from(values, {});
          return lto_stability_estimate(x, r, fold_partition(x.rows(), folds),
                                        lambda, pair_budget, seed, renormalized);
        },
        py::arg("values"), py::arg("r"), py::arg("folds"), py::arg("lambda_"),
        py::arg("pair_budget") = 100, py::arg("seed") = 0,
        py::arg("renormalized") = false,
        "mean squared leave-two-out weight response");

  m.def("bonferroni_set",
        [](const Eigen::MatrixXd& values, double alpha) {
          return bonferroni_set(matrix_from(values, {}), alpha).confidence_set;
        },
        py::arg("values"), py::arg("alpha") = 0.05,
        "pairwise-corrected confidence set");

  m.def("gupta_quantile",
        [](int p, double alpha, int replications, std::uint64_t seed) {
          return gupta_quantile(p, alpha, replications, seed).value;
        },
        py::arg("p"), py::arg("alpha"), py::arg("replications") = 100000,
        py::arg("seed") = 0,
        "upper quantile of a standardized gap maximum");

  m.def("gupta_set",
        [](const Eigen::MatrixXd& values, double alpha,
           std::optional<Eigen::VectorXd> sigma, int replications,
           std::uint64_t seed) {
          GuptaQuantileCache cache(replications, seed);
          return gupta_set(matrix_from(values, {}), alpha, sigma, cache)
              .confidence_set;
        },
        py::arg("values"), py::arg("alpha") = 0.05,
        py::arg("sigma") = std::nullopt, py::arg("replications") = 100000,
        py::arg("seed") = 0, "single-threshold subset selection");

  m.def("futschik_set",
        [](const Eigen::MatrixXd& values, double alpha,
           std::optional<Eigen::VectorXd> sigma, int replications,
           std::uint64_t seed) {
          GuptaQuantileCache cache(replications, seed);
          return futschik_set(matrix_from(values, {}), alpha, sigma, cache)
              .confidence_set;
        },
        py::arg("values"), py::arg("alpha") = 0.05,
        py::arg("sigma") = std::nullopt, py::arg("replications") = 100000,
        py::arg("seed") = 0, "two-stage subset selection");

  m.def("make_landscape",
        [](const std::string& kind, int p, double factor,
           const std::vector<double>& mu) {
          LandscapeKind parsed;
          if (kind == "flat") parsed = LandscapeKind::flat;
          else if (kind == "increasing") parsed = LandscapeKind::increasing;
          else if (kind == "three-tier") parsed = LandscapeKind::three_tier;
          else if (kind == "explicit") parsed = LandscapeKind::explicit_mu;
          else fail(errc::bad_argument, "unknown landscape kind: " + kind);
          Eigen::VectorXd values =
              Eigen::Map<const Eigen::VectorXd>(mu.data(),
                                                static_cast<Eigen::Index>(mu.size()));
          return make_landscape(parsed, p, factor, values).mu;
        },
        py::arg("kind"), py::arg("p") = 0, py::arg("factor") = 1.0,
        py::arg("mu") = std::vector<double>{}, "mean vector of a named shape");

  m.def("toeplitz_covariance", &toeplitz_covariance, py::arg("p"),
        py::arg("rho"), "geometric-decay covariance matrix");

  m.def("sample_gaussian",
        [](const std::vector<double>& mu, double rho, int n,
           std::uint64_t seed) {
          MeanLandscape landscape = make_landscape(
              LandscapeKind::explicit_mu, 0, 1.0,
              Eigen::Map<const Eigen::VectorXd>(
                  mu.data(), static_cast<Eigen::Index>(mu.size())));
          GaussianSampler sampler(landscape, rho);
          RngStream rng(seed);
          return sampler.sample(n, rng).values;
        },
        py::arg("mu"), py::arg("rho"), py::arg("n"), py::arg("seed"),
        "n rows from a correlated Gaussian with the given means");

  m.def("centered_statistic",
        [](const Eigen::MatrixXd& values, const Eigen::VectorXd& mu, int r,
           int folds, double lambda, double sigma) {
          SampleMatrix x = matrix_from(values, {});
          return centered_statistic(x, mu, r, fold_partition(x.rows(), folds),
                                    lambda, sigma)
              .value;
        },
        py::arg("values"), py::arg("mu"), py::arg("r"), py::arg("folds"),
        py::arg("lambda_"), py::arg("sigma"),
        "weighted gap statistic recentred at its true mean");

  m.def("split_statistic",
        [](const Eigen::MatrixXd& values, const Eigen::VectorXd& mu, int r,
           int folds) {
          SampleMatrix x = matrix_from(values, {});
          return split_statistic(x, mu, r, fold_partition(x.rows(), folds));
        },
        py::arg("values"), py::arg("mu"), py::arg("r"), py::arg("folds"),
        "hard-argmin gap statistic recentred at its true mean");

  m.def("nosplit_weighted_statistic",
        [](const Eigen::MatrixXd& values, const Eigen::VectorXd& mu, int r,
           double lambda) {
          return nosplit_weighted_statistic(matrix_from(values, {}), mu, r,
                                            lambda);
        },
        py::arg("values"), py::arg("mu"), py::arg("r"), py::arg("lambda_"),
        "recentred gap statistic with weights fit on all rows");

  m.def("confusion_set_size",
        [](const Eigen::VectorXd& mu, int r, double lambda, int folds) {
          ConfusionSummary summary = confusion_set_size(mu, r, lambda, folds);
          py::dict out;
          out["count"] = summary.count;
          out["alpha_n"] = summary.alpha_n;
          out["beta_n"] = summary.beta_n;
          return out;
        },
        py::arg("mu"), py::arg("r"), py::arg("lambda_"), py::arg("folds"),
        "dimensions whose mean gap falls in the hard-to-separate band");

  m.def("gaussian_max_check",
        [](const std::vector<int>& n_values, double sigma, int reps,
           std::uint64_t seed) {
          py::list rows;
          for (const MaxCheckRow& row :
               gaussian_max_check(sigma, n_values, reps, seed)) {
            py::dict d;
            d["n"] = row.n;
            d["mean"] = row.mean;
            d["std_error"] = row.std_error;
            d["lower"] = row.lower;
            d["upper"] = row.upper;
            d["ok"] = row.ok;
            rows.append(d);
          }
          return rows;
        },
        py::arg("n_values"), py::arg("sigma") = 1.0, py::arg("reps") = 100000,
        py::arg("seed") = 0,
        "simulated expected maxima against closed-form envelopes");

  m.def("normal_quantile", &normal_quantile, py::arg("q"),
        "inverse standard normal CDF");
  m.def("kolmogorov_sf", &kolmogorov_sf, py::arg("t"),
        "Kolmogorov distribution survival function");
  m.def("ks_test_standard_normal",
        [](const std::vector<double>& values) {
          KsResult result = ks_test_standard_normal(values);
          return py::make_tuple(result.statistic, result.p_value);
        },
        py::arg("values"), "KS statistic and p-value against N(0,1)");
}
