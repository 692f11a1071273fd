#pragma once

#include <stdexcept>
#include <string>

namespace bsloc {

enum class ErrorCode {
  EndpointOnLattice,
  InvalidProfile,
  InvalidPiece,
  NotClosed,
  IncompatibleGluing,
  NotConnected,
  OddEuler,
  UnknownGluing,
  LiftOnLattice,
  BadSum,
  OutOfDomain,
  GridTooCoarse,
  BadMargin,
  BadModeWindow,
  Unresolved,
  EmptyKernel,
  UnresolvedFactor,
  SingularFiberPresent,
  CountMismatch,
  InputError,
  LatticeBoundary,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bsloc
