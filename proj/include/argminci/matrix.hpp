#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace argminci {

// n x p sample matrix: rows are observations, columns the candidate
// dimensions. Entries must be finite, n >= 2 and p >= 2.
struct SampleMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> labels;  // size p, defaults to "1".."p"

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }

  static SampleMatrix from_values(Eigen::MatrixXd values,
                                  std::vector<std::string> labels = {});
};

// 16-hex-digit digest of the value buffer; used to prove shared draws.
std::string matrix_digest(const SampleMatrix& x);

}  // namespace argminci
