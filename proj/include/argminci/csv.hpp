#pragma once

#include <iosfwd>
#include <string>

#include "argminci/matrix.hpp"

namespace argminci {

// Rectangular numeric CSV; optional first-row header supplies column labels.
// Error positions are reported 1-based (including the header row).
SampleMatrix parse_matrix_csv(const std::string& path, bool has_header);
SampleMatrix parse_matrix_csv_text(const std::string& text, bool has_header,
                                   const std::string& origin = "<csv>");

void write_matrix_csv(std::ostream& out, const SampleMatrix& x,
                      bool with_header);

// Shortest decimal form that round-trips the exact double.
std::string format_double(double value);

}  // namespace argminci
