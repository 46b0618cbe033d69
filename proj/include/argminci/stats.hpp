#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "argminci/rng.hpp"

namespace argminci {

// Standard-normal quantile, accurate to better than 1e-9 across (0,1).
// p = 0 maps to -inf, p = 1 to +inf.
double normal_quantile(double p);
double normal_cdf(double x);
double normal_pdf(double x);

double mean(std::span<const double> v);
// ddof = 0 divides by n, ddof = 1 by n-1.
double variance(std::span<const double> v, int ddof);
double sample_sd(std::span<const double> v);
double skewness(std::span<const double> v);

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

// Order-statistic quantile: the ceil(q*n)-th smallest value.
double empirical_quantile(std::vector<double> values, double q);

struct KsResult {
  double statistic;  // sup |F_n - Phi|
  double p_value;    // asymptotic Kolmogorov tail at sqrt(n) * statistic
};
KsResult ks_test_standard_normal(std::vector<double> values);
// Survival function of the Kolmogorov distribution.
double kolmogorov_sf(double t);

enum class TieBreak { lowest_index, seeded_random };

// Index of the smallest value; exact ties resolved by policy.
int empirical_argmin(std::span<const double> values, TieBreak policy,
                     RngStream* rng);

// FNV-1a over the raw little-endian bytes, rendered as 16 hex digits.
std::string byte_digest(const void* data, std::size_t bytes);

}  // namespace argminci
