#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oddsec {

enum class Errc {
  DivisionByZero,
  MixedFields,
  InvalidField,
  EqualPoints,
  DegenerateFrame,
  BudgetExceeded,
  SizeMismatch,
  ScalingDegenerate,
  NotS43,
  MultiplicityMismatch,
  TangentConeMismatch,
  HypothesisFailed,
  BothZero,
  DegreeTooHigh,
  UnderDetermined,
  AllCollinear,
  InvalidParams,
  ParseError,
  FieldMismatch,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MixedFields: return "MixedFields";
    case Errc::InvalidField: return "InvalidField";
    case Errc::EqualPoints: return "EqualPoints";
    case Errc::DegenerateFrame: return "DegenerateFrame";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::ScalingDegenerate: return "ScalingDegenerate";
    case Errc::NotS43: return "NotS43";
    case Errc::MultiplicityMismatch: return "MultiplicityMismatch";
    case Errc::TangentConeMismatch: return "TangentConeMismatch";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::BothZero: return "BothZero";
    case Errc::DegreeTooHigh: return "DegreeTooHigh";
    case Errc::UnderDetermined: return "UnderDetermined";
    case Errc::AllCollinear: return "AllCollinear";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::ParseError: return "ParseError";
    case Errc::FieldMismatch: return "FieldMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), message_(what) {}

  Errc code() const noexcept { return code_; }
  /// The text without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace oddsec
