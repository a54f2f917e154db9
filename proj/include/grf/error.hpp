#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grf {

enum class Errc {
  InvalidRing,
  InvalidInput,
  DimensionMismatch,
  ZeroValuation,
  RingMismatch,
  EmptyIdeal,
  InvalidSlot,
  NonCommutingActions,
  DegreeIncompatible,
  PrecompositionNotLinear,
  MinusNInSupport,
  NotZeroDimensional,
  BoxTooSmall,
  SizeLimit,
  Internal,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidRing: return "InvalidRing";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroValuation: return "ZeroValuation";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::EmptyIdeal: return "EmptyIdeal";
    case Errc::InvalidSlot: return "InvalidSlot";
    case Errc::NonCommutingActions: return "NonCommutingActions";
    case Errc::DegreeIncompatible: return "DegreeIncompatible";
    case Errc::PrecompositionNotLinear: return "PrecompositionNotLinear";
    case Errc::MinusNInSupport: return "MinusNInSupport";
    case Errc::NotZeroDimensional: return "NotZeroDimensional";
    case Errc::BoxTooSmall: return "BoxTooSmall";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace grf
