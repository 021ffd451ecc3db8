#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hamoeba {

/// Failure categories. The command-line tool maps `validation` and
/// `infeasible` to exit code 1 and `numerical` to exit code 2.
enum class ErrorKind { validation, infeasible, numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::validation, what);
}

inline double require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    fail(ErrorKind::numerical, std::string("non-finite intermediate: ") + what);
  }
  return value;
}

}  // namespace hamoeba
