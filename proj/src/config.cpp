#include "argminci/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "argminci/error.hpp"

namespace argminci {

namespace {

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string lowered(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trimmed(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

IniFile IniFile::parse_text(const std::string& text, const std::string& origin) {
  IniFile ini;
  ini.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trimmed(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(errc::bad_config, origin + ":" + std::to_string(line_number) +
                                   ": unterminated section header");
      section = lowered(trimmed(line.substr(1, line.size() - 2)));
      if (section.empty())
        fail(errc::bad_config, origin + ":" + std::to_string(line_number) +
                                   ": empty section name");
      ini.sections_[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::bad_config, origin + ":" + std::to_string(line_number) +
                                 ": expected key = value");
    if (section.empty())
      fail(errc::bad_config, origin + ":" + std::to_string(line_number) +
                                 ": key outside any section");
    std::string key = lowered(trimmed(line.substr(0, eq)));
    std::string value = trimmed(line.substr(eq + 1));
    if (key.empty())
      fail(errc::bad_config,
           origin + ":" + std::to_string(line_number) + ": empty key");
    ini.sections_[section][key] = Entry{value, line_number};
  }
  return ini;
}

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::bad_config, path + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  auto sec = sections_.find(section);
  return sec != sections_.end() && sec->second.count(key) > 0;
}

void IniFile::fail_at(const std::string& section, const std::string& key,
                      const std::string& message) const {
  std::string where = origin_;
  auto sec = sections_.find(section);
  if (sec != sections_.end()) {
    auto entry = sec->second.find(key);
    if (entry != sec->second.end())
      where += ":" + std::to_string(entry->second.line);
  }
  fail(errc::bad_config, where + ": " + section + "." + key + ": " + message);
}

std::string IniFile::get(const std::string& section,
                         const std::string& key) const {
  auto sec = sections_.find(section);
  if (sec == sections_.end() || !sec->second.count(key))
    fail(errc::bad_config,
         origin_ + ": missing required key " + section + "." + key);
  return sec->second.at(key).value;
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double IniFile::get_number(const std::string& section,
                           const std::string& key) const {
  const std::string raw = get(section, key);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc() || ptr != raw.data() + raw.size())
    fail_at(section, key, "cannot parse '" + raw + "' as a number");
  return value;
}

double IniFile::number_or(const std::string& section, const std::string& key,
                          double fallback) const {
  return has(section, key) ? get_number(section, key) : fallback;
}

long long IniFile::get_integer(const std::string& section,
                               const std::string& key) const {
  const std::string raw = get(section, key);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc() || ptr != raw.data() + raw.size())
    fail_at(section, key, "cannot parse '" + raw + "' as an integer");
  return value;
}

long long IniFile::integer_or(const std::string& section,
                              const std::string& key, long long fallback) const {
  return has(section, key) ? get_integer(section, key) : fallback;
}

namespace {

MeanLandscape landscape_from(const IniFile& ini) {
  const std::string kind = lowered(ini.get_or("data", "landscape", "flat"));
  const int p = static_cast<int>(ini.integer_or("data", "p", 0));
  const double factor = ini.number_or("data", "mean_factor", 0.0);
  if (kind == "explicit") {
    if (!ini.has("data", "mu"))
      ini.fail_at("data", "landscape", "explicit landscape needs data.mu");
    auto items = split_list(ini.get("data", "mu"));
    Eigen::VectorXd mu(static_cast<Eigen::Index>(items.size()));
    for (std::size_t k = 0; k < items.size(); ++k) {
      double v = 0.0;
      auto [ptr, ec] =
          std::from_chars(items[k].data(), items[k].data() + items[k].size(), v);
      if (ec != std::errc() || ptr != items[k].data() + items[k].size())
        ini.fail_at("data", "mu",
                    "cannot parse '" + items[k] + "' as a number");
      mu[static_cast<Eigen::Index>(k)] = v;
    }
    return make_landscape(LandscapeKind::explicit_mu, static_cast<int>(mu.size()),
                          factor, mu);
  }
  if (p < 2) ini.fail_at("data", "p", "need an integer p >= 2");
  if (kind == "flat")
    return make_landscape(LandscapeKind::flat, p, factor);
  if (kind == "increasing")
    return make_landscape(LandscapeKind::increasing, p, factor);
  if (kind == "three-tier")
    return make_landscape(LandscapeKind::three_tier, p, factor);
  ini.fail_at("data", "landscape",
              "unknown landscape '" + kind +
                  "' (flat | increasing | three-tier | explicit)");
}

int folds_from(const IniFile& ini, const std::string& section, int n) {
  const std::string raw = lowered(ini.get_or(section, "folds", "2"));
  if (raw == "loo") return n;
  int v = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc() || ptr != raw.data() + raw.size())
    ini.fail_at(section, "folds", "expected an integer or 'loo'");
  return v;
}

}  // namespace

ExperimentSpec parse_experiment_spec(const IniFile& ini) {
  ExperimentSpec spec;
  const std::string kind = lowered(ini.get("experiment", "kind"));
  if (kind == "simulate") spec.kind = ExperimentKind::simulate;
  else if (kind == "compare") spec.kind = ExperimentKind::compare;
  else if (kind == "calibrate") spec.kind = ExperimentKind::calibrate;
  else if (kind == "stability") spec.kind = ExperimentKind::stability;
  else
    ini.fail_at("experiment", "kind",
                "unknown kind '" + kind +
                    "' (simulate | compare | calibrate | stability)");

  ExperimentConfig& config = spec.config;
  config.landscape = landscape_from(ini);
  config.rho = ini.number_or("data", "rho", 0.0);
  if (!(config.rho >= 0.0 && config.rho < 1.0))
    ini.fail_at("data", "rho", "must lie in [0, 1)");
  config.n = static_cast<int>(ini.integer_or("data", "n", 0));
  if (spec.kind != ExperimentKind::stability && config.n < 2)
    ini.fail_at("data", "n", "need an integer n >= 2");
  config.seed =
      static_cast<std::uint64_t>(ini.integer_or("experiment", "seed", 1));
  config.repetitions =
      static_cast<int>(ini.integer_or("experiment", "repetitions", 100));
  if (config.repetitions < 1)
    ini.fail_at("experiment", "repetitions", "need at least 1");

  config.alpha = ini.number_or("method", "alpha", 0.05);
  if (!(config.alpha >= 0.0) || config.alpha >= 1.0)
    ini.fail_at("method", "alpha", "must lie in [0, 1)");
  if (spec.kind != ExperimentKind::stability)
    config.folds = folds_from(ini, "method", config.n);

  const std::string lambda_raw = lowered(ini.get_or("method", "lambda", "auto"));
  if (lambda_raw == "auto") {
    config.lambda_mode = LambdaMode::auto_per_dimension;
  } else if (lambda_raw == "auto-global") {
    config.lambda_mode = LambdaMode::auto_global;
  } else {
    double v = 0.0;
    auto [ptr, ec] =
        std::from_chars(lambda_raw.data(), lambda_raw.data() + lambda_raw.size(), v);
    if (ec != std::errc() || ptr != lambda_raw.data() + lambda_raw.size() ||
        !(v >= 0.0))
      ini.fail_at("method", "lambda",
                  "expected a nonnegative number, 'auto' or 'auto-global'");
    config.lambda_mode = LambdaMode::fixed;
    config.lambda = v;
  }

  const std::string variance_raw = lowered(ini.get_or("method", "variance", "out"));
  if (variance_raw == "out") config.variance = VarianceKind::out;
  else if (variance_raw == "in") config.variance = VarianceKind::in_fold;
  else ini.fail_at("method", "variance", "expected 'out' or 'in'");

  config.quantile_replications =
      ini.integer_or("method", "quantile_replications", 100000);
  if (config.quantile_replications < 1)
    ini.fail_at("method", "quantile_replications", "need at least 1");

  if (spec.kind == ExperimentKind::compare) {
    const std::string methods = ini.get_or(
        "compare", "methods", "proposed,bonferroni,gupta,futschik");
    for (const std::string& name : split_list(methods)) {
      auto parsed = parse_method(name);
      if (!parsed)
        ini.fail_at("compare", "methods", "unknown method '" + name + "'");
      config.methods.push_back(*parsed);
    }
    if (config.methods.empty())
      ini.fail_at("compare", "methods", "need at least one method");
  } else if (spec.kind == ExperimentKind::simulate) {
    const std::string name = lowered(ini.get_or("method", "name", "proposed"));
    auto parsed = parse_method(name);
    if (!parsed) ini.fail_at("method", "name", "unknown method '" + name + "'");
    config.methods = {*parsed};
  } else if (spec.kind == ExperimentKind::calibrate) {
    config.methods = {MethodKind::proposed};
  }

  if (spec.kind == ExperimentKind::stability) {
    if (!ini.has("stability", "n_values"))
      fail(errc::bad_config,
           ini.origin() + ": missing required key stability.n_values");
    for (const std::string& item : split_list(ini.get("stability", "n_values"))) {
      int v = 0;
      auto [ptr, ec] =
          std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size() || v < 2)
        ini.fail_at("stability", "n_values", "expected integers >= 2");
      spec.stability.n_values.push_back(v);
    }
    const std::string lam = lowered(ini.get_or("stability", "lambda", "sqrt_n"));
    if (lam == "sqrt_n") {
      spec.stability.lambda_sqrt_n = true;
    } else {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(lam.data(), lam.data() + lam.size(), v);
      if (ec != std::errc() || ptr != lam.data() + lam.size() || !(v >= 0.0))
        ini.fail_at("stability", "lambda",
                    "expected a nonnegative number or 'sqrt_n'");
      spec.stability.lambda_sqrt_n = false;
      spec.stability.lambda = v;
    }
    const std::string folds_raw = lowered(ini.get_or("method", "folds", "loo"));
    if (folds_raw == "loo") {
      spec.stability.loo = true;
    } else {
      int v = 0;
      auto [ptr, ec] =
          std::from_chars(folds_raw.data(), folds_raw.data() + folds_raw.size(), v);
      if (ec != std::errc() || ptr != folds_raw.data() + folds_raw.size() || v < 2)
        ini.fail_at("method", "folds", "expected an integer >= 2 or 'loo'");
      spec.stability.loo = false;
      spec.stability.folds = v;
    }
    spec.stability.r = static_cast<int>(ini.integer_or("stability", "r", 1));
    if (spec.stability.r < 1 ||
        spec.stability.r > static_cast<int>(config.landscape.mu.size()))
      ini.fail_at("stability", "r", "dimension out of range");
    spec.stability.reps =
        static_cast<int>(ini.integer_or("stability", "reps", 1000));
    if (spec.stability.reps < 1)
      ini.fail_at("stability", "reps", "need at least 1");
    config.methods = {MethodKind::proposed};
  }

  return spec;
}

}  // namespace argminci
