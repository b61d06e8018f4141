#pragma once

#include <stdexcept>
#include <string>

namespace sxt {

/// File access or input parsing failure (CLI exit code 3).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad configuration or mismatched artifacts (CLI exit code 2).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Problem exceeds a hard architectural limit (CLI exit code 2).
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A stream, schedule, or result failed verification (CLI exit code 1).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sxt
