#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strebel {

enum class ErrorKind {
  // construction / configuration
  DuplicatePoles,
  ZeroWeight,
  NonpositiveTotalWeight,
  InvalidArgument,
  // evaluation
  EvaluationAtPole,
  RootSolverFailure,
  // tracing
  NearCriticalPoint,
  NoClosure,
  TraceEscape,
  BoxTooSmall,
  // conformal maps
  SolverSingular,
  P0Outside,
  TooCloseToBoundary,
  OutsideDomain,
  PoleOnWrongSide,
  BranchPathCrossesPole,
  // fingerprints
  CurveMismatch,
  CenterOnCircle,
  NonMonotone,
  NonUnitModulus,
  PreconditionFailed,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for the kinds that describe a malformed configuration rather than a
/// numerical breakdown.
bool is_configuration_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace strebel
