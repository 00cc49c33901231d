#pragma once

#include <stdexcept>
#include <string>

namespace rbfreg {

enum class ErrorKind {
  InvalidArgument,
  InvalidParameter,
  Validation,
  SingularSystem,
  SingularGradient,
  DegenerateConfiguration,
  InternalConsistency,
  Io,
  Usage,
};

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rbfreg
