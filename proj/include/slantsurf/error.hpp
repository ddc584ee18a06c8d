#pragma once

#include <stdexcept>
#include <string>

namespace slantsurf {

// Failure categories surfaced by the geometry kernel. The CLI prints these
// verbatim in its one-line diagnostics, so the names are part of the
// machine-readable interface.
enum class Errc {
    OutOfDomain,
    NearNull,
    NullVelocity,
    NullStriction,
    VanishingCurvature,
    VanishingTorsion,
    CylindricalRuling,
    ZeroCurvature,
    SingularDenominator,
    GramDrift,
    InvalidMode,
    SingularInterval,
    ZeroScale,
    NormalMismatch,
    NotDevelopable,
    HypothesisViolated,
    ParseError,
    EmptyGrid,
    InvalidArgument,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::OutOfDomain:          return "OutOfDomain";
        case Errc::NearNull:             return "NearNull";
        case Errc::NullVelocity:         return "NullVelocity";
        case Errc::NullStriction:        return "NullStriction";
        case Errc::VanishingCurvature:   return "VanishingCurvature";
        case Errc::VanishingTorsion:     return "VanishingTorsion";
        case Errc::CylindricalRuling:    return "CylindricalRuling";
        case Errc::ZeroCurvature:        return "ZeroCurvature";
        case Errc::SingularDenominator:  return "SingularDenominator";
        case Errc::GramDrift:            return "GramDrift";
        case Errc::InvalidMode:          return "InvalidMode";
        case Errc::SingularInterval:     return "SingularInterval";
        case Errc::ZeroScale:            return "ZeroScale";
        case Errc::NormalMismatch:       return "NormalMismatch";
        case Errc::NotDevelopable:       return "NotDevelopable";
        case Errc::HypothesisViolated:   return "HypothesisViolated";
        case Errc::ParseError:           return "ParseError";
        case Errc::EmptyGrid:            return "EmptyGrid";
        case Errc::InvalidArgument:      return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace slantsurf
