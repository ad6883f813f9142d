#pragma once

#include <stdexcept>
#include <string>

namespace waveortho {

enum class ErrorCode {
  Domain,
  UnsupportedOrder,
  TooCoarse,
  NotProlate,
  Singularity,
  Shape,
  InvalidBasis,
  DegenerateBasis,
  SingularSystem,
  UndefinedNormalization,
  UnsupportedRegion,
  Usage,
  Io,
  OracleFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace waveortho
