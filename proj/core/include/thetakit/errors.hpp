#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thetakit {

enum class ErrorCode {
  NotSquarefree,
  WrongDegree,
  EvaluationAtBranchPoint,
  QuadratureNotConverged,
  IllConditionedAPeriods,
  PathTooCloseToBranchPoint,
  InvalidTau,
  RadiusOverflow,
  PathDegenerate,
  RiemannVectorAmbiguous,
  SamplingExhausted,
  NoNonsingularOddCharacteristic,
  HalfDiffVanishes,
  DenominatorOnThetaDivisor,
  DiagonalEvaluation,
  WeightLedgerMismatch,
  NotImplemented,
  DegreeTooSmall,
  NonSquareBlocks,
  NotEvenPartition,
  InvalidArgument,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a report entry without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thetakit
