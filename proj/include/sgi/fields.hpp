#pragma once

#include "sgi/core.hpp"

namespace sgi {

/// In-plane magnetic field; Bz is identically zero for both profiles.
struct FieldSample {
    double Bx = 0.0;  // T
    double By = 0.0;  // T
};

/// Linear: (B0 + eta x, -eta y). NonLinear: (B0 - eta (x^2 - y^2), 2 eta x y).
FieldSample field_at(const StageConfig& stage, double x, double y) noexcept;
FieldSample field_at(const Schedule& schedule, double t, double x, double y);

/// Per-stage, per-arm coefficients of the equations of motion
///   x'' = omega_x_eff_sq * x + drive_accel,   y'' = omega_y_eff_sq * y.
struct StageFrequencies {
    StageKind kind = StageKind::Linear;
    double omega_stage = 0.0;     // omega_l or omega_nl, rad/s
    double kappa_nl = 0.0;        // rad/(s m), NonLinear only
    double omega_x_eff_sq = 0.0;  // rad^2/s^2, signed
    double omega_y_eff_sq = 0.0;  // rad^2/s^2, signed
    double A0 = 0.0;              // N, s mu eta - chi m B0 eta / mu0 (Linear only)
    double drive_accel = 0.0;     // m/s^2, equals -A0/m
};

StageFrequencies stage_frequencies(const StageConfig& stage, const ParticleSpec& particle,
                                   SpinState spin, const ModelOptions& options = {});

/// omega_l = eta sqrt(-chi/mu0) for a Linear stage, omega_nl = sqrt(-2 chi B0 eta/mu0)
/// for a NonLinear one.
double stage_omega(const StageConfig& stage, double chi_rho, double mu0);

/// Ground-state width sqrt(hbar / (2 m omega_l)) of the first Linear stage.
double ground_state_width(const StageConfig& stage1, const ParticleSpec& particle,
                          const PhysicalConstants& constants = {});

struct NonlinearValidity {
    bool valid = true;
    double ratio = 0.0;  // kappa_nl^2 x^2 / omega_nl^2
};

/// Whether the quartic term of the non-linear potential is negligible over x_extent.
NonlinearValidity check_nonlinear_validity(const StageConfig& stage, const ParticleSpec& particle,
                                           double x_extent, double threshold = 0.01,
                                           const PhysicalConstants& constants = {});

}  // namespace sgi
