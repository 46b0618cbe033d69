#pragma once

#include <stdexcept>
#include <string>

namespace argminci {

// Failure taxonomy for the whole library. CLI maps degenerate_variance to
// exit code 3 and everything else raised on user input to exit code 2.
enum class errc {
  bad_argument,
  bad_fold_count,
  non_divisible,
  fold_mismatch,
  degenerate_variance,
  loo_forbidden,
  degenerate_spread,
  insufficient_samples,
  index_clash,
  too_few_dimensions,
  flat_landscape,
  ragged_rows,
  non_numeric_cell,
  empty_file,
  bad_config,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace argminci
