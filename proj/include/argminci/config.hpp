#pragma once

#include <map>
#include <string>
#include <vector>

#include "argminci/simulation.hpp"

namespace argminci {

// Minimal INI: [section] headers, key = value lines, # or ; comments.
// Lookups remember file and line so validation can point at the source.
class IniFile {
 public:
  static IniFile parse_file(const std::string& path);
  static IniFile parse_text(const std::string& text,
                            const std::string& origin = "<config>");

  bool has(const std::string& section, const std::string& key) const;
  // Throws bad_config naming origin, line and section.key when required.
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  double get_number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key,
                   double fallback) const;
  long long get_integer(const std::string& section,
                        const std::string& key) const;
  long long integer_or(const std::string& section, const std::string& key,
                       long long fallback) const;

  const std::string& origin() const { return origin_; }
  [[noreturn]] void fail_at(const std::string& section, const std::string& key,
                            const std::string& message) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

enum class ExperimentKind { simulate, compare, calibrate, stability };

struct StabilitySweep {
  std::vector<int> n_values;
  bool lambda_sqrt_n = true;  // else fixed lambda below
  double lambda = 0.0;
  bool loo = true;  // folds track n; else the fixed fold count below
  int folds = 2;
  int r = 1;  // 1-based
  int reps = 1000;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::simulate;
  ExperimentConfig config;
  StabilitySweep stability;  // kind == stability only
};

// Parses and validates a whole experiment description; errors carry
// origin:line and section.key context.
ExperimentSpec parse_experiment_spec(const IniFile& ini);

}  // namespace argminci
