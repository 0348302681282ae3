#pragma once

#include <stdexcept>
#include <string>

namespace accretive {

// Failure taxonomy shared by the whole library.  Three families matter to
// callers: input/domain problems (the matrix is not what the operation
// needs), usage problems (malformed files or specs), and numerical failures
// (an algorithm could not certify its own result).
enum class ErrorKind {
  InvalidInput,
  NotHermitian,
  NotSkewHermitian,
  NotNormal,
  NotPositiveDefinite,
  NotAccretive,
  NotAccretiveUnitary,
  NotSectorial,
  PhaseOutOfSector,
  Singular,
  DomainError,
  BranchCut,
  DomainExit,
  ParseError,
  IOError,
  InvalidSpec,
  EigFailure,
  ConvergenceFailure,
  InternalConsistency,
};

const char* kind_name(ErrorKind k);

enum class ErrorCategory { Domain, Usage, Numerical };

ErrorCategory kind_category(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace accretive
