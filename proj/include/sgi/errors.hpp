#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgi {

enum class Errc {
    WrongStageCount,
    KindOrderViolation,
    NonPositiveDuration,
    InvalidStageParameter,
    SpinAssignmentViolation,
    InvalidSpin,
    InvalidParticle,
    InvalidConstants,
    TimeOutOfRange,
    NonNegativeSusceptibility,
    WrongStageKind,
    InvalidArgument,
    StepSizeUnderflow,
    NonFiniteDerivative,
    BetaSingularity,
    PropagatorCaustic,
    WidthMismatch,
    NoConvergence,
    CausticProximity,
    NonConvergedQuadrature,
    ConfigParse,
    Io,
};

/// Broad class of a failure; the CLI maps it to an exit status.
enum class ErrorClass { Config, Numerical, NoConvergence };

std::string_view errc_name(Errc code) noexcept;
ErrorClass error_class(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }
    ErrorClass error_class() const noexcept { return sgi::error_class(code_); }

private:
    Errc code_;
};

}  // namespace sgi
