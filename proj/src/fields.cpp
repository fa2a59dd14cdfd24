#include "sgi/fields.hpp"

#include <cmath>

#include "sgi/errors.hpp"

namespace sgi {

FieldSample field_at(const StageConfig& stage, double x, double y) noexcept {
    if (stage.kind == StageKind::Linear) return {stage.B0 + stage.eta * x, -stage.eta * y};
    return {stage.B0 - stage.eta * (x * x - y * y), 2.0 * stage.eta * x * y};
}

FieldSample field_at(const Schedule& schedule, double t, double x, double y) {
    return field_at(schedule.stage_at(t), x, y);
}

double stage_omega(const StageConfig& stage, double chi_rho, double mu0) {
    if (chi_rho >= 0.0)
        throw Error(Errc::NonNegativeSusceptibility, "chi_rho must be negative for a diamagnet");
    if (stage.kind == StageKind::Linear) return std::abs(stage.eta) * std::sqrt(-chi_rho / mu0);
    const double w2 = -2.0 * chi_rho * stage.B0 * stage.eta / mu0;
    return w2 > 0.0 ? std::sqrt(w2) : 0.0;
}

StageFrequencies stage_frequencies(const StageConfig& stage, const ParticleSpec& particle,
                                   SpinState spin, const ModelOptions& options) {
    const double mu0 = options.constants.mu0;
    StageFrequencies f;
    f.kind = stage.kind;
    f.omega_stage = stage_omega(stage, particle.chi_rho, mu0);
    const double w2 = f.omega_stage * f.omega_stage;
    const double wx2 = options.trap_on ? stage.omega_x * stage.omega_x : 0.0;
    const double wy2 = options.trap_on ? stage.omega_y * stage.omega_y : 0.0;
    const bool as_written = options.trap_sign == TrapSign::AsWritten;

    if (stage.kind == StageKind::Linear) {
        f.omega_x_eff_sq = as_written ? -(w2 - wx2) : -(w2 + wx2);
        f.omega_y_eff_sq = as_written ? (wy2 - w2) : -(w2 + wy2);
        f.A0 = spin.value() * particle.mu_nv * stage.eta -
               particle.chi_rho * particle.m * stage.B0 * stage.eta / mu0;
        f.drive_accel = -f.A0 / particle.m;
    } else {
        f.kappa_nl = stage.eta * std::sqrt(-particle.chi_rho / mu0);
        f.omega_x_eff_sq = as_written ? (w2 + wx2) : (w2 - wx2);
        f.omega_y_eff_sq = as_written ? (w2 - wy2) : -(w2 + wy2);
    }
    return f;
}

double ground_state_width(const StageConfig& stage1, const ParticleSpec& particle,
                          const PhysicalConstants& constants) {
    const double w = stage_omega(stage1, particle.chi_rho, constants.mu0);
    if (!(w > 0.0)) throw Error(Errc::InvalidStageParameter, "stage 1 frequency must be positive");
    return std::sqrt(constants.hbar / (2.0 * particle.m * w));
}

NonlinearValidity check_nonlinear_validity(const StageConfig& stage, const ParticleSpec& particle,
                                           double x_extent, double threshold,
                                           const PhysicalConstants& constants) {
    if (stage.kind != StageKind::NonLinear)
        throw Error(Errc::WrongStageKind, "validity check applies to non-linear stages only");
    const double w = stage_omega(stage, particle.chi_rho, constants.mu0);
    const double kappa2 = -particle.chi_rho * stage.eta * stage.eta / constants.mu0;
    NonlinearValidity v;
    v.ratio = kappa2 * x_extent * x_extent / (w * w);
    v.valid = v.ratio < threshold;
    return v;
}

}  // namespace sgi
