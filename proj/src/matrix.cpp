#include "argminci/matrix.hpp"

#include <cmath>

#include "argminci/error.hpp"
#include "argminci/stats.hpp"

namespace argminci {

const char* errc_name(errc code) {
  switch (code) {
    case errc::bad_argument: return "BadArgument";
    case errc::bad_fold_count: return "BadFoldCount";
    case errc::non_divisible: return "NonDivisible";
    case errc::fold_mismatch: return "FoldMismatch";
    case errc::degenerate_variance: return "DegenerateVariance";
    case errc::loo_forbidden: return "LooForbidden";
    case errc::degenerate_spread: return "DegenerateSpread";
    case errc::insufficient_samples: return "InsufficientSamples";
    case errc::index_clash: return "IndexClash";
    case errc::too_few_dimensions: return "TooFewDimensions";
    case errc::flat_landscape: return "FlatLandscape";
    case errc::ragged_rows: return "RaggedRows";
    case errc::non_numeric_cell: return "NonNumericCell";
    case errc::empty_file: return "EmptyFile";
    case errc::bad_config: return "BadConfig";
  }
  return "Error";
}

SampleMatrix SampleMatrix::from_values(Eigen::MatrixXd values,
                                       std::vector<std::string> labels) {
  if (values.rows() < 2) fail(errc::bad_argument, "need at least 2 rows");
  if (values.cols() < 2) fail(errc::bad_argument, "need at least 2 columns");
  if (!values.allFinite())
    fail(errc::bad_argument, "matrix entries must be finite");
  if (!labels.empty() &&
      labels.size() != static_cast<std::size_t>(values.cols()))
    fail(errc::bad_argument, "label count must match column count");
  if (labels.empty()) {
    labels.reserve(static_cast<std::size_t>(values.cols()));
    for (int s = 0; s < values.cols(); ++s)
      labels.push_back(std::to_string(s + 1));
  }
  return SampleMatrix{std::move(values), std::move(labels)};
}

std::string matrix_digest(const SampleMatrix& x) {
  return byte_digest(x.values.data(),
                     sizeof(double) * static_cast<std::size_t>(x.values.size()));
}

}  // namespace argminci
