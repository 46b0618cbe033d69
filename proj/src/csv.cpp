#include "argminci/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "argminci/error.hpp"

namespace argminci {

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) fail(errc::bad_argument, "unformattable number");
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

SampleMatrix parse_matrix_csv_text(const std::string& text, bool has_header,
                                   const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::size_t width = 0;

  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  bool saw_content = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (trimmed(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (!saw_content) {
      saw_content = true;
      width = fields.size();
      if (has_header) {
        for (auto& f : fields) labels.push_back(trimmed(f));
        continue;
      }
    }
    if (fields.size() != width)
      fail(errc::ragged_rows,
           origin + ":" + std::to_string(line_number) + ": expected " +
               std::to_string(width) + " fields, found " +
               std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string cell = trimmed(fields[c]);
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        fail(errc::non_numeric_cell,
             origin + ":" + std::to_string(line_number) + ": column " +
                 std::to_string(c + 1) + ": cannot parse '" + cell +
                 "' as a number");
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (!saw_content || rows.empty())
    fail(errc::empty_file, origin + ": no data rows");

  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < width; ++c)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          rows[i][c];
  return SampleMatrix::from_values(std::move(values), std::move(labels));
}

SampleMatrix parse_matrix_csv(const std::string& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::empty_file, path + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_csv_text(buffer.str(), has_header, path);
}

void write_matrix_csv(std::ostream& out, const SampleMatrix& x,
                      bool with_header) {
  if (with_header) {
    for (int s = 0; s < x.cols(); ++s) {
      if (s) out << ',';
      out << x.labels[static_cast<std::size_t>(s)];
    }
    out << '\n';
  }
  for (int i = 0; i < x.rows(); ++i) {
    for (int s = 0; s < x.cols(); ++s) {
      if (s) out << ',';
      out << format_double(x.values(i, s));
    }
    out << '\n';
  }
}

}  // namespace argminci
