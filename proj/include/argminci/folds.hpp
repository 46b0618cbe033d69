#pragma once

namespace argminci {

// Contiguous equal-size fold partition of rows 0..n-1 into V blocks.
// V = n is always admissible (leave-one-out); otherwise V must divide n.
struct FoldScheme {
  int sample_count;  // n
  int fold_count;    // V

  int fold_size() const { return sample_count / fold_count; }
  int fold_of(int i) const { return i / fold_size(); }
  int fold_begin(int v) const { return v * fold_size(); }
  int fold_end(int v) const { return (v + 1) * fold_size(); }  // exclusive
  int out_count() const { return sample_count - fold_size(); }
  bool is_loo() const { return fold_count == sample_count; }
};

FoldScheme fold_partition(int n, int V);

}  // namespace argminci
