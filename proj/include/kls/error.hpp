#pragma once

#include <stdexcept>
#include <string>

namespace kls {

enum class ErrorCode {
  InvalidInput,
  DegreeExceedsRank,
  NotDivisible,
  NotInvertible,
  MismatchedCarrier,
  MirrorConstraintViolated,
  NotRanked,
  NotLowerEulerian,
  InvalidSubdivision,
  InvalidAction,
  GroupTooLarge,
  AssemblyInconsistent,
  NonIntegralCharacter,
  NotASimplex,
  VerificationFailed,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace kls
