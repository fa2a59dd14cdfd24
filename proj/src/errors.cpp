#include "sgi/errors.hpp"

namespace sgi {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::WrongStageCount: return "WrongStageCount";
        case Errc::KindOrderViolation: return "KindOrderViolation";
        case Errc::NonPositiveDuration: return "NonPositiveDuration";
        case Errc::InvalidStageParameter: return "InvalidStageParameter";
        case Errc::SpinAssignmentViolation: return "SpinAssignmentViolation";
        case Errc::InvalidSpin: return "InvalidSpin";
        case Errc::InvalidParticle: return "InvalidParticle";
        case Errc::InvalidConstants: return "InvalidConstants";
        case Errc::TimeOutOfRange: return "TimeOutOfRange";
        case Errc::NonNegativeSusceptibility: return "NonNegativeSusceptibility";
        case Errc::WrongStageKind: return "WrongStageKind";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::StepSizeUnderflow: return "StepSizeUnderflow";
        case Errc::NonFiniteDerivative: return "NonFiniteDerivative";
        case Errc::BetaSingularity: return "BetaSingularity";
        case Errc::PropagatorCaustic: return "PropagatorCaustic";
        case Errc::WidthMismatch: return "WidthMismatch";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::CausticProximity: return "CausticProximity";
        case Errc::NonConvergedQuadrature: return "NonConvergedQuadrature";
        case Errc::ConfigParse: return "ConfigParse";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

ErrorClass error_class(Errc code) noexcept {
    switch (code) {
        case Errc::NoConvergence:
        case Errc::NonConvergedQuadrature:
            return ErrorClass::NoConvergence;
        case Errc::StepSizeUnderflow:
        case Errc::NonFiniteDerivative:
        case Errc::BetaSingularity:
        case Errc::PropagatorCaustic:
        case Errc::WidthMismatch:
        case Errc::CausticProximity:
            return ErrorClass::Numerical;
        default:
            return ErrorClass::Config;
    }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace sgi
