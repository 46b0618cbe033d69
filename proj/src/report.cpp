#include "argminci/report.hpp"

#include <cmath>
#include <ostream>

#include "argminci/csv.hpp"
#include "argminci/error.hpp"

namespace argminci {

namespace {

// NaN has no JSON literal; degenerate statistics serialize as null.
nlohmann::json number_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

const char* lambda_mode_name(LambdaMode mode) {
  switch (mode) {
    case LambdaMode::fixed: return "fixed";
    case LambdaMode::auto_per_dimension: return "auto";
    case LambdaMode::auto_global: return "auto-global";
  }
  return "fixed";
}

nlohmann::json trace_to_json(const LambdaTrace& trace) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& c : trace.candidates)
    candidates.push_back({{"lambda", c.lambda},
                          {"stability", c.stability},
                          {"variance_ref", c.variance_ref},
                          {"accepted", c.accepted}});
  return {{"dimension", trace.dimension},
          {"lambda0", trace.lambda0},
          {"selected", trace.selected},
          {"candidates", candidates}};
}

LambdaTrace trace_from_json(const nlohmann::json& j) {
  LambdaTrace trace;
  trace.dimension = j.at("dimension").get<int>();
  trace.lambda0 = j.at("lambda0").get<double>();
  trace.selected = j.at("selected").get<double>();
  for (const auto& c : j.at("candidates"))
    trace.candidates.push_back({c.at("lambda").get<double>(),
                                c.at("stability").get<double>(),
                                c.at("variance_ref").get<double>(),
                                c.at("accepted").get<bool>()});
  return trace;
}

}  // namespace

nlohmann::json analysis_to_json(const ConfidenceResult& result,
                                const ArgminTask& task, const SampleMatrix& x) {
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& d : result.dimensions) {
    nlohmann::json row = {{"dimension", d.dimension},
                          {"label", d.label},
                          {"statistic", number_or_null(d.statistic)},
                          {"sigma", d.sigma},
                          {"lambda", d.lambda},
                          {"included", d.included},
                          {"degenerate", d.degenerate}};
    if (!d.competitors.empty()) row["competitors"] = d.competitors;
    if (d.trace) row["lambda_trace"] = trace_to_json(*d.trace);
    dims.push_back(std::move(row));
  }
  return {{"method",
           {{"name", "cv-exponential-weighting"},
            {"alpha", task.alpha},
            {"folds", task.folds},
            {"lambda_mode", lambda_mode_name(task.lambda_mode)},
            {"lambda", task.lambda},
            {"variance",
             task.variance == VarianceKind::out ? "out" : "in"},
            {"tie_break",
             task.tie_break == TieBreak::lowest_index ? "lowest" : "random"},
            {"degenerate_policy",
             task.degenerate == DegeneratePolicy::error ? "error" : "include"},
            {"seed", task.seed}}},
          {"n", x.rows()},
          {"p", x.cols()},
          {"z_critical", result.z_critical},
          {"confidence_set", result.confidence_set},
          {"dimensions", dims},
          {"warnings", result.warnings}};
}

ConfidenceResult analysis_from_json(const nlohmann::json& j) {
  ConfidenceResult result;
  result.z_critical = j.at("z_critical").get<double>();
  result.confidence_set = j.at("confidence_set").get<std::vector<int>>();
  result.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& row : j.at("dimensions")) {
    DimensionReport d;
    d.dimension = row.at("dimension").get<int>();
    d.label = row.at("label").get<std::string>();
    d.statistic = row.at("statistic").is_null()
                      ? std::nan("")
                      : row.at("statistic").get<double>();
    d.sigma = row.at("sigma").get<double>();
    d.lambda = row.at("lambda").get<double>();
    d.included = row.at("included").get<bool>();
    d.degenerate = row.at("degenerate").get<bool>();
    if (row.contains("competitors"))
      d.competitors = row.at("competitors").get<std::vector<double>>();
    if (row.contains("lambda_trace"))
      d.trace = trace_from_json(row.at("lambda_trace"));
    result.dimensions.push_back(std::move(d));
  }
  return result;
}

namespace {

nlohmann::json config_json(const ExperimentConfig& config) {
  const char* kind = "flat";
  switch (config.landscape.kind) {
    case LandscapeKind::flat: kind = "flat"; break;
    case LandscapeKind::increasing: kind = "increasing"; break;
    case LandscapeKind::three_tier: kind = "three-tier"; break;
    case LandscapeKind::explicit_mu: kind = "explicit"; break;
  }
  nlohmann::json methods = nlohmann::json::array();
  for (MethodKind m : config.methods) methods.push_back(method_name(m));
  return {{"landscape", kind},
          {"mean_factor", config.landscape.factor},
          {"p", config.landscape.mu.size()},
          {"n", config.n},
          {"rho", config.rho},
          {"folds", config.folds},
          {"alpha", config.alpha},
          {"lambda_mode", lambda_mode_name(config.lambda_mode)},
          {"lambda", config.lambda},
          {"variance", config.variance == VarianceKind::out ? "out" : "in"},
          {"repetitions", config.repetitions},
          {"seed", config.seed},
          {"methods", methods}};
}

}  // namespace

nlohmann::json experiment_summary_json(const ExperimentResults& results) {
  std::vector<int> theta = results.config.landscape.argmin_set();
  nlohmann::json theta_json = nlohmann::json::array();
  for (int s : theta) theta_json.push_back(s + 1);

  nlohmann::json methods = nlohmann::json::array();
  for (const auto& summary : results.summaries) {
    nlohmann::json rates = nlohmann::json::array();
    for (double r : summary.inclusion_rate) rates.push_back(r);
    methods.push_back({{"method", method_name(summary.method)},
                       {"nu_bar", summary.nu_bar},
                       {"mean_false_negatives", summary.mean_false_negatives},
                       {"inclusion_rate", rates},
                       {"failed_repetitions", summary.failed_repetitions},
                       {"errors", summary.errors}});
  }

  // Pairwise mean false-negative differences, row method minus column method.
  nlohmann::json fn_diff = nlohmann::json::array();
  for (const auto& a : results.summaries) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& b : results.summaries)
      row.push_back(a.mean_false_negatives - b.mean_false_negatives);
    fn_diff.push_back(row);
  }

  return {{"config", config_json(results.config)},
          {"argmin_set", theta_json},
          {"methods", methods},
          {"false_negative_differences", fn_diff},
          {"max_center", results.max_center},
          {"center_count", results.center_count}};
}

void write_experiment_csv(std::ostream& out, const ExperimentResults& results) {
  out << "repetition,digest,method,dimension,in_argmin,included,statistic,"
         "lambda\n";
  for (const auto& rec : results.records) {
    out << rec.repetition << ','
        << results.digests[static_cast<std::size_t>(rec.repetition - 1)] << ','
        << method_name(rec.method) << ',' << rec.dimension << ','
        << (rec.in_argmin ? 1 : 0) << ',' << (rec.included ? 1 : 0) << ','
        << (std::isnan(rec.statistic) ? "" : format_double(rec.statistic))
        << ','
        << (rec.method == MethodKind::proposed ? format_double(rec.lambda) : "")
        << '\n';
  }
}

void write_calibration_csv(
    std::ostream& out,
    const std::vector<std::pair<int, LambdaTrace>>& traces) {
  out << "repetition,dimension,lambda0,candidate_index,candidate_lambda,"
         "stability,variance_ref,accepted,selected\n";
  for (const auto& [rep, trace] : traces) {
    if (trace.candidates.empty()) {
      out << rep << ',' << trace.dimension << ','
          << format_double(trace.lambda0) << ",,,,,,"
          << format_double(trace.selected) << '\n';
      continue;
    }
    for (std::size_t c = 0; c < trace.candidates.size(); ++c) {
      const auto& cand = trace.candidates[c];
      out << rep << ',' << trace.dimension << ','
          << format_double(trace.lambda0) << ',' << c + 1 << ','
          << format_double(cand.lambda) << ',' << format_double(cand.stability)
          << ',' << format_double(cand.variance_ref) << ','
          << (cand.accepted ? 1 : 0) << ',' << format_double(trace.selected)
          << '\n';
    }
  }
}

nlohmann::json calibration_summary_json(
    const std::vector<std::pair<int, LambdaTrace>>& traces,
    const ExperimentConfig& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [rep, trace] : traces) {
    nlohmann::json t = trace_to_json(trace);
    t["repetition"] = rep;
    rows.push_back(std::move(t));
  }
  return {{"config", config_json(config)}, {"traces", rows}};
}

void write_stability_csv(std::ostream& out,
                         const std::vector<StabilitySample>& samples) {
  out << "n,lambda,repetition,grad1_sq,grad2_sq\n";
  for (const auto& sample : samples) {
    for (std::size_t rep = 0; rep < sample.grad1_sq.size(); ++rep) {
      out << sample.sample_count << ',' << format_double(sample.lambda) << ','
          << rep + 1 << ',' << format_double(sample.grad1_sq[rep]) << ','
          << format_double(sample.grad2_sq[rep]) << '\n';
    }
  }
}

nlohmann::json stability_summary_json(
    const std::vector<StabilitySample>& samples) {
  nlohmann::json rows = nlohmann::json::array();
  std::vector<double> log_n, log_mean1, log_mean2;
  for (const auto& sample : samples) {
    rows.push_back({{"n", sample.sample_count},
                    {"lambda", sample.lambda},
                    {"mean_grad1_sq", sample.mean_grad1_sq},
                    {"mean_grad2_sq", sample.mean_grad2_sq}});
    log_n.push_back(std::log10(static_cast<double>(sample.sample_count)));
    log_mean1.push_back(std::log10(sample.mean_grad1_sq));
    log_mean2.push_back(std::log10(sample.mean_grad2_sq));
  }
  nlohmann::json out = {{"points", rows}};
  if (samples.size() >= 2) {
    out["slope_grad1"] = fit_slope(log_n, log_mean1);
    out["slope_grad2"] = fit_slope(log_n, log_mean2);
  }
  return out;
}

}  // namespace argminci
