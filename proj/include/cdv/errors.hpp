#ifndef CDV_ERRORS_HPP
#define CDV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cdv {

enum class ErrorKind {
  NonFiniteCoefficient,
  StepUnderflow,
  NonUniqueness,
  PreconditionOrderViolated,
  PositivityViolated,
  EmptyGrid,
  PoleOnSegment,
  EmptySphere,
  Borderline,
  NotConverged,
  DomainMismatch,
  NegativeSolution,
  DegenerateMass,
  ZeroWeight,
  NotFactorized,
  HypothesisFailed,
  BeyondConjugate,
  SubcriticalC,
  ParseError,
  ConfigError,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace cdv

#endif
