#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quatreg {

enum class ErrorKind {
  ZeroDivisor,
  OnRealAxis,
  DegenerateChart,
  OrderTooHigh,
  BasisMismatch,
  IndexTooDeep,
  DomainError,
  UnknownFunction,
  BadParams,
  TouchesRealAxis,
  ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the sweep
/// kernels in particular) can record it per point instead of aborting.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quatreg
