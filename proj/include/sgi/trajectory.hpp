#pragma once

#include <cstddef>
#include <vector>

#include "sgi/core.hpp"
#include "sgi/fields.hpp"

namespace sgi {

struct SpatialState {
    double x = 0.0;   // m
    double vx = 0.0;  // m/s
    double y = 0.0;   // m
    double vy = 0.0;  // m/s
    double t = 0.0;   // s
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<std::size_t> stage_index;
    std::vector<SpatialState> left;
    std::vector<SpatialState> right;
    std::vector<double> delta_x;  // right.x - left.x
    std::vector<double> delta_v;  // right.vx - left.vx
};

/// Both arms start at rest at (0, y0).
SpatialState initial_spatial_state(const ParticleSpec& particle) noexcept;

/// Closed-form evolution over tau within one stage.
SpatialState propagate_stage(const SpatialState& state, const StageFrequencies& freqs, double tau);

/// Arm state at every stage boundary: element k is the state at the start of
/// stage k, element 5 the state at t5.
std::vector<SpatialState> stage_boundary_states(const Schedule& schedule,
                                                const ParticleSpec& particle, Arm arm,
                                                const ModelOptions& options = {});

/// Separation (right - left) in x and vx. Propagated directly in the relative
/// coordinate, where the arm-symmetric bias drive cancels identically.
struct Separation {
    double dx = 0.0;
    double dv = 0.0;
};

std::vector<Separation> separation_at_boundaries(const Schedule& schedule,
                                                 const ParticleSpec& particle,
                                                 const ModelOptions& options = {});

Separation separation_at(const Schedule& schedule, const ParticleSpec& particle, double t,
                         const ModelOptions& options = {});

TrajectoryRecord run_interferometer(const Schedule& schedule, const ParticleSpec& particle,
                                    const ModelOptions& options = {},
                                    std::size_t samples_per_stage = 400);

/// Largest |dx| reached during stage 3, the free flight between the two
/// non-linear amplifications, located analytically.
double max_superposition(const Schedule& schedule, const ParticleSpec& particle,
                         const ModelOptions& options = {});

/// Largest |dx| over the whole loop, located analytically stage by stage.
double max_separation_full(const Schedule& schedule, const ParticleSpec& particle,
                           const ModelOptions& options = {});

/// Velocity-free special case: separation 4 mu eta/(m w_l^2) entering stage 2 at rest.
double velocity_free_superposition(const Schedule& schedule, const ParticleSpec& particle,
                                   const ModelOptions& options = {});

struct TuneOptions {
    std::size_t max_iterations = 100;
    double tol_dx = 1.0e-9;   // m
    double tol_dv = 1.0e-9;   // m/s
    /// Also free the stage-4 gradient. Without it only stage 5 moves.
    bool include_stage4_gradient = true;
    /// Allowed range of each free parameter, as a factor of its seed value.
    double stage4_eta_range = 0.5;
    double stage5_eta_min = 0.1;
    double stage5_eta_max = 10.0;
    double stage5_duration_min = 0.05;
    double stage5_duration_max = 20.0;
};

struct TuneResult {
    Schedule schedule;
    double residual_dx = 0.0;  // m
    double residual_dv = 0.0;  // m/s
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;  // scaled residual norm per iteration
};

/// Damped Gauss-Newton on (dx(t5), dv(t5)). Never throws on non-convergence;
/// the best point found is returned with converged = false.
TuneResult try_tune_closure(const Schedule& schedule, const ParticleSpec& particle,
                            const ModelOptions& options = {}, const TuneOptions& tune = {});

/// As try_tune_closure but throws Errc::NoConvergence with the best residuals.
TuneResult tune_closure(const Schedule& schedule, const ParticleSpec& particle,
                        const ModelOptions& options = {}, const TuneOptions& tune = {});

}  // namespace sgi
