#include "argminci/folds.hpp"

#include <string>

#include "argminci/error.hpp"

namespace argminci {

FoldScheme fold_partition(int n, int V) {
  if (n < 2) fail(errc::bad_argument, "need at least 2 samples");
  if (V < 2)
    fail(errc::bad_fold_count, "fold count must be at least 2, got " +
                                   std::to_string(V));
  if (V != n && (V > n || n % V != 0))
    fail(errc::non_divisible, "fold count " + std::to_string(V) +
                                  " does not divide sample count " +
                                  std::to_string(n));
  return FoldScheme{n, V};
}

}  // namespace argminci
