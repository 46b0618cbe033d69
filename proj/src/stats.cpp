#include "argminci/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "argminci/error.hpp"

namespace argminci {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

namespace {

// Acklam's rational approximation to the standard-normal quantile
// (relative error below 1.2e-9 on its own), then one Newton step against
// erfc-based Phi pushes the error to the limits of double precision.
double quantile_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    fail(errc::bad_argument, "quantile probability must lie in [0, 1]");
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  double x = quantile_seed(p);
  for (int pass = 0; pass < 2; ++pass) {
    double err = normal_cdf(x) - p;
    double step = err / normal_pdf(x);
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

double mean(std::span<const double> v) {
  if (v.empty()) fail(errc::bad_argument, "mean of empty sequence");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(std::span<const double> v, int ddof) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  if (n - ddof <= 0) fail(errc::bad_argument, "variance needs more values");
  double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(n - ddof);
}

double sample_sd(std::span<const double> v) { return std::sqrt(variance(v, 1)); }

double skewness(std::span<const double> v) {
  double m = mean(v);
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  double n = static_cast<double>(v.size());
  m2 /= n;
  m3 /= n;
  return m3 / std::pow(m2, 1.5);
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(errc::bad_argument, "slope needs two sequences of equal length >= 2");
  double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) fail(errc::bad_argument, "quantile of empty sequence");
  if (q <= 0.0 || q > 1.0)
    fail(errc::bad_argument, "quantile level must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  auto n = static_cast<double>(values.size());
  auto k = static_cast<std::size_t>(std::ceil(q * n));
  k = std::min(std::max<std::size_t>(k, 1), values.size());
  return values[k - 1];
}

double kolmogorov_sf(double t) {
  if (t <= 0.0) return 1.0;
  if (t < 0.755) {
    // Complementary theta expansion; the alternating series needs too many
    // terms here.
    double s = 0.0;
    double f = std::numbers::pi * std::numbers::pi / (8.0 * t * t);
    for (int k = 1; k <= 21; k += 2) s += std::exp(-f * k * k);
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / t * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * t * t);
    s += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_test_standard_normal(std::vector<double> values) {
  if (values.empty()) fail(errc::bad_argument, "KS test on empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double f = normal_cdf(values[i]);
    double lo = f - static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n - f;
    d = std::max({d, lo, hi});
  }
  return {d, kolmogorov_sf(std::sqrt(n) * d)};
}

int empirical_argmin(std::span<const double> values, TieBreak policy,
                     RngStream* rng) {
  if (values.empty()) fail(errc::bad_argument, "argmin of empty sequence");
  double best = values[0];
  for (double v : values) best = std::min(best, v);
  if (policy == TieBreak::lowest_index) {
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] == best) return static_cast<int>(i);
  }
  if (rng == nullptr)
    fail(errc::bad_argument, "seeded-random tie break needs a stream");
  std::vector<int> tied;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == best) tied.push_back(static_cast<int>(i));
  return tied[static_cast<std::size_t>(
      rng->uniform_int(0, static_cast<std::int64_t>(tied.size()) - 1))];
}

std::string byte_digest(const void* data, std::size_t bytes) {
  const auto* b = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace argminci
