#include "waveortho/errors.hpp"
#include "waveortho/types.hpp"

#include <cmath>

namespace waveortho {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::UnsupportedOrder: return "unsupported order";
    case ErrorCode::TooCoarse: return "too coarse";
    case ErrorCode::NotProlate: return "not prolate";
    case ErrorCode::Singularity: return "singularity";
    case ErrorCode::Shape: return "shape error";
    case ErrorCode::InvalidBasis: return "invalid basis";
    case ErrorCode::DegenerateBasis: return "degenerate basis";
    case ErrorCode::SingularSystem: return "singular system";
    case ErrorCode::UndefinedNormalization: return "undefined normalization";
    case ErrorCode::UnsupportedRegion: return "unsupported region";
    case ErrorCode::Usage: return "usage error";
    case ErrorCode::Io: return "I/O error";
    case ErrorCode::OracleFailure: return "oracle failure";
  }
  return "error";
}

Complex IncidentField::value(const Vec3& r) const {
  return amplitude * std::exp(kI * (k * direction.dot(r)));
}

CVec3 IncidentField::gradient(const Vec3& r) const {
  const Complex u = value(r);
  return (kI * k * u) * direction.cast<Complex>();
}

}  // namespace waveortho
