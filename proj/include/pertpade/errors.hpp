#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pertpade {

enum class ErrorKind {
  Domain,
  Unsupported,
  RootNotFound,
  NonConfiningAuxiliary,
  NotCoulombLike,
  FitFailure,
  QuadratureFailure,
  Degeneracy,
  TruncationTooSmall,
  PadeDegenerate,
  PoleEvaluation,
  DomainClip,
  Config,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit code and name the failing stage.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pertpade
