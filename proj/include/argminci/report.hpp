#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "argminci/config.hpp"
#include "argminci/simulation.hpp"
#include "argminci/statistic.hpp"

namespace argminci {

// Analysis report: method metadata, per-dimension rows, the set itself,
// warnings. Round-trips through JSON without loss.
nlohmann::json analysis_to_json(const ConfidenceResult& result,
                                const ArgminTask& task,
                                const SampleMatrix& x);
ConfidenceResult analysis_from_json(const nlohmann::json& j);

nlohmann::json experiment_summary_json(const ExperimentResults& results);

// Long format: one row per repetition x method x dimension, with the
// per-repetition data digest repeated on every row.
void write_experiment_csv(std::ostream& out, const ExperimentResults& results);

void write_calibration_csv(std::ostream& out,
                           const std::vector<std::pair<int, LambdaTrace>>& traces);
nlohmann::json calibration_summary_json(
    const std::vector<std::pair<int, LambdaTrace>>& traces,
    const ExperimentConfig& config);

void write_stability_csv(std::ostream& out,
                         const std::vector<StabilitySample>& samples);
nlohmann::json stability_summary_json(const std::vector<StabilitySample>& samples);

}  // namespace argminci
