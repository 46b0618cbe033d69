#pragma once

#include <cstdint>
#include <vector>

#include "argminci/folds.hpp"
#include "argminci/matrix.hpp"
#include "argminci/stats.hpp"

namespace argminci {

// Doubling-search parameters. Defaults depend on the fold count:
//   V = n   : epsilon 0.05, phi = n
//   V = 2   : epsilon 0.3,  phi = n^2
//   other V : epsilon 0.1,  phi = n^(3/2)
struct TuningSchedule {
  double epsilon;
  double phi;
  int pair_budget = 100;
  int max_iterations = 64;

  static TuningSchedule for_folds(int n, int V);
};

struct LambdaCandidate {
  double lambda;
  double stability;     // leave-two-out estimate at this candidate
  double variance_ref;  // variance_out / n at this candidate
  bool accepted;
};

struct LambdaTrace {
  int dimension = -1;
  double lambda0 = 0.0;
  double selected = 0.0;
  std::vector<LambdaCandidate> candidates;
};

// sqrt(n) / (2.5 * sd of the values each row sees at its out-of-fold argmin
// dimension). Degenerate spread falls back to the pooled column sd.
double lambda0(const SampleMatrix& x, int r, const FoldScheme& scheme,
               TieBreak tie_break = TieBreak::lowest_index,
               std::uint64_t seed = 0);

// Leave-two-out estimate of the expected squared first-order stability term:
// pairs (i, j) with i outside row j's fold are subsampled to pair_budget,
// and for each pair the weight vector recomputed with row i dropped is
// compared against one with another out-of-fold row k dropped.
// Drop-one means keep the full out-of-fold denominator unless renormalized.
double lto_stability_estimate(const SampleMatrix& x, int r,
                              const FoldScheme& scheme, double lambda,
                              int pair_budget, std::uint64_t seed,
                              bool renormalized = false);

// Doubling search from lambda0: keep doubling while the stability estimate at
// the candidate stays below epsilon * variance_out / n and the candidate
// stays below phi.
LambdaTrace select_lambda(const SampleMatrix& x, int r, const FoldScheme& scheme,
                          const TuningSchedule& schedule, std::uint64_t seed,
                          bool renormalized = false,
                          TieBreak tie_break = TieBreak::lowest_index);

}  // namespace argminci
