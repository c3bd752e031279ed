#pragma once

#include <stdexcept>
#include <string>

namespace qf {

enum class Errc {
  DegenerateColor,
  NotASquare,
  NotOnCurve,
  TwoTorsionBasePoint,
  SingularTranslate,
  MapsToInfinity,
  MapsToBasePointPair,
  TwoTorsionInput,
  TwoTorsionHit,
  BadReduction,
  BadReductionF,
  BadPrimeForPoint,
  TorsionNotRational,
  InvalidArgument,
  ConfigError,
  InternalError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DegenerateColor: return "DegenerateColor";
    case Errc::NotASquare: return "NotASquare";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::TwoTorsionBasePoint: return "TwoTorsionBasePoint";
    case Errc::SingularTranslate: return "SingularTranslate";
    case Errc::MapsToInfinity: return "MapsToInfinity";
    case Errc::MapsToBasePointPair: return "MapsToBasePointPair";
    case Errc::TwoTorsionInput: return "TwoTorsionInput";
    case Errc::TwoTorsionHit: return "TwoTorsionHit";
    case Errc::BadReduction: return "BadReduction";
    case Errc::BadReductionF: return "BadReductionF";
    case Errc::BadPrimeForPoint: return "BadPrimeForPoint";
    case Errc::TorsionNotRational: return "TorsionNotRational";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

// Domain error with a machine-readable code. The CLI maps these to exit
// code 1 and a JSON error object; tests match on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qf
