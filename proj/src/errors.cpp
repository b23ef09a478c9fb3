#include "pertpade/errors.hpp"

namespace pertpade {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::RootNotFound: return "RootNotFound";
    case ErrorKind::NonConfiningAuxiliary: return "NonConfiningAuxiliary";
    case ErrorKind::NotCoulombLike: return "NotCoulombLike";
    case ErrorKind::FitFailure: return "FitFailure";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::Degeneracy: return "DegeneracyError";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::PadeDegenerate: return "PadeDegenerate";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::DomainClip: return "DomainClipError";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

}  // namespace pertpade
