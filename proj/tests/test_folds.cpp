#include <doctest.h>

#include "argminci/error.hpp"
#include "argminci/folds.hpp"

using namespace argminci;

TEST_CASE("contiguous blocks for a divisible fold count") {
  FoldScheme s = fold_partition(6, 3);
  CHECK(s.sample_count == 6);
  CHECK(s.fold_count == 3);
  CHECK(s.fold_size() == 2);
  CHECK(s.out_count() == 4);
  CHECK_FALSE(s.is_loo());
  const int expect[] = {0, 0, 1, 1, 2, 2};
  for (int i = 0; i < 6; ++i) CHECK(s.fold_of(i) == expect[i]);
  CHECK(s.fold_begin(1) == 2);
  CHECK(s.fold_end(1) == 4);
}

TEST_CASE("leave-one-out always admissible") {
  FoldScheme s = fold_partition(5, 5);
  CHECK(s.is_loo());
  CHECK(s.fold_size() == 1);
  CHECK(s.out_count() == 4);
  for (int i = 0; i < 5; ++i) CHECK(s.fold_of(i) == i);
}

TEST_CASE("fold boundaries partition the rows") {
  const int n = 12;
  for (int V : {2, 3, 4, 6, 12}) {
    FoldScheme s = fold_partition(n, V);
    int covered = 0;
    for (int v = 0; v < V; ++v) {
      CHECK(s.fold_end(v) - s.fold_begin(v) == s.fold_size());
      for (int i = s.fold_begin(v); i < s.fold_end(v); ++i) {
        CHECK(s.fold_of(i) == v);
        ++covered;
      }
    }
    CHECK(covered == n);
  }
}

TEST_CASE("invalid partitions are rejected with typed errors") {
  auto code_of = [](int n, int V) {
    try {
      fold_partition(n, V);
    } catch (const Error& e) {
      return e.code();
    }
    return errc::bad_config;  // sentinel: no throw
  };
  CHECK(code_of(7, 2) == errc::non_divisible);
  CHECK(code_of(4, 3) == errc::non_divisible);
  CHECK(code_of(4, 8) == errc::non_divisible);
  CHECK(code_of(4, 1) == errc::bad_fold_count);
  CHECK(code_of(4, 0) == errc::bad_fold_count);
  CHECK(code_of(4, -2) == errc::bad_fold_count);
  CHECK(code_of(1, 1) == errc::bad_argument);
}
