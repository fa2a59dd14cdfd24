#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sgi/core.hpp"
#include "sgi/fields.hpp"
#include "sgi/ode.hpp"
#include "sgi/trajectory.hpp"

namespace sgi {

struct RotationalState {
    double beta = 0.0;       // rad
    double beta_dot = 0.0;   // rad/s
    double alpha = 0.0;      // rad
    double gamma = 0.0;      // rad
    double p_alpha = 0.0;    // J s
    double p_gamma = 0.0;    // J s
};

struct CoupledState {
    SpatialState spatial;
    RotationalState rotational;
};

/// Time derivative of (x, vx, y, vy).
struct SpatialDerivative {
    double dx = 0.0;
    double dvx = 0.0;
    double dy = 0.0;
    double dvy = 0.0;
};

/// Time derivative of (beta, beta_dot, alpha, gamma).
struct RotationalDerivative {
    double dbeta = 0.0;
    double dbeta_dot = 0.0;
    double dalpha = 0.0;
    double dgamma = 0.0;
};

using SpatialRhs = std::function<SpatialDerivative(double t, const SpatialState&)>;
using RotationalRhs =
    std::function<RotationalDerivative(double t, const SpatialState&, const RotationalState&)>;

/// Uncoupled equations of motion; stage and spin are picked from t.
SpatialRhs spatial_rhs(const Schedule& schedule, const ParticleSpec& particle, Arm arm,
                       const ModelOptions& options = {});

/// Libration, precession and spin rates of the rotor. Throws BetaSingularity
/// when |sin beta| < guard.
RotationalRhs rotational_rhs(const Schedule& schedule, const ParticleSpec& particle, Arm arm,
                             const ModelOptions& options = {}, double guard = 1.0e-6);

/// Field component seen by the NV axis.
double nv_field(const FieldSample& B, double beta, double d_off, double eta, double alpha_prime) noexcept;

RotationalState initial_rotational_state(const ParticleSpec& particle) noexcept;

struct CoupledOptions {
    bool rotation_on = true;
    ModelOptions model{};
    ode::IntegratorOptions integrator{};
    std::size_t samples_per_stage = 2000;
    double beta_guard = 1.0e-6;
    bool parallel_arms = true;
};

struct CoupledRecord {
    bool rotation_on = true;
    std::vector<double> times;
    std::vector<std::size_t> stage_index;
    std::vector<CoupledState> left;
    std::vector<CoupledState> right;
    std::vector<double> delta_beta;   // left - right
    std::vector<double> delta_alpha;
    std::vector<double> delta_gamma;
    std::size_t rhs_evaluations = 0;
};

/// Integrates both arms through the five stages, restarting the integrator at
/// every boundary. With rotation off beta is held at zero and only the spatial
/// equations are integrated.
CoupledRecord simulate_coupled(const Schedule& schedule, const ParticleSpec& particle,
                               const CoupledOptions& options = {});

}  // namespace sgi
