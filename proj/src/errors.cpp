#include "cdv/errors.hpp"

namespace cdv {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonFiniteCoefficient: return "NonFiniteCoefficient";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NonUniqueness: return "NonUniqueness";
    case ErrorKind::PreconditionOrderViolated: return "PreconditionOrderViolated";
    case ErrorKind::PositivityViolated: return "PositivityViolated";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::PoleOnSegment: return "PoleOnSegment";
    case ErrorKind::EmptySphere: return "EmptySphere";
    case ErrorKind::Borderline: return "Borderline";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NegativeSolution: return "NegativeSolution";
    case ErrorKind::DegenerateMass: return "DegenerateMass";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::NotFactorized: return "NotFactorized";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::BeyondConjugate: return "BeyondConjugate";
    case ErrorKind::SubcriticalC: return "SubcriticalC";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace cdv
