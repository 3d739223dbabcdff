#include "quatreg/error.hpp"

namespace quatreg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::OnRealAxis: return "OnRealAxis";
    case ErrorKind::DegenerateChart: return "DegenerateChart";
    case ErrorKind::OrderTooHigh: return "OrderTooHigh";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::IndexTooDeep: return "IndexTooDeep";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::TouchesRealAxis: return "TouchesRealAxis";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace quatreg
