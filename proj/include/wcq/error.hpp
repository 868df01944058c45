#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcq {

enum class ErrorCode {
  DuplicateName,
  DegreeMismatch,
  DifferentialNotSquareZero,
  ZeroWeightBaseVariable,
  AlgebraMismatch,
  OddVariableInverted,
  UnknownVariable,
  InvalidExponent,
  SyntaxError,
  ValidationError,
  DegreeIncompatible,
  NotAComplex,
  NotChainMap,
  WrongSide,
  PositiveGeneratorPresent,
  EmptySide,
  NonHomogeneousSequence,
  NonHomogeneousIdeal,
  NonHomogeneousDifferential,
  NonPolynomialBase,
  RangeTooShort,
  NoPositiveChart,
  NoNegativeChart,
  HypothesisViolation,
  UnknownSuite,
  InvalidArgument,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(ErrorCode code, const std::string& message, std::size_t offset = npos);

  ErrorCode code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::size_t offset_;
};

}  // namespace wcq
