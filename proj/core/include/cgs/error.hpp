#pragma once

#include <stdexcept>
#include <string>

namespace cgs {

enum class ErrorKind {
  InvalidArgument,
  SizeGuard,
  Numeric,
  Config,
};

// Base exception for everything thrown by the library. The kind drives the
// CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorKind::InvalidArgument, what);
}
inline Error size_guard(const std::string& what) {
  return Error(ErrorKind::SizeGuard, what);
}
inline Error numeric_failure(const std::string& what) {
  return Error(ErrorKind::Numeric, what);
}

}  // namespace cgs
