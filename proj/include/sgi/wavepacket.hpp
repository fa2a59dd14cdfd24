#pragma once

#include <cstddef>
#include <vector>

#include "sgi/core.hpp"
#include "sgi/fields.hpp"

namespace sgi {

/// psi(x) = N exp{-(x - x_c)^2/(4 sigma^2) + i(a x^2/4 + b x + c)},
/// N = norm_modulus * exp(i norm_phase).
struct PacketParams {
    double sigma = 0.0;        // m
    double x_c = 0.0;          // m
    double a = 0.0;            // 1/m^2
    double b = 0.0;            // 1/m
    double c = 0.0;            // rad
    double norm_modulus = 0.0; // (2 pi sigma^2)^(-1/4), 1/sqrt(m)
    double norm_phase = 0.0;   // rad, accumulated Gouy phase
};

struct PacketRecord {
    std::vector<double> times;
    std::vector<std::size_t> stage_index;
    std::vector<PacketParams> left;
    std::vector<PacketParams> right;
};

/// Gaussian at rest profile: a = 0, b = p0/hbar, c = -p0 x0/hbar.
PacketParams initial_packet(double sigma0, double x0, double p0, const PhysicalConstants& constants = {});

/// Momentum of the packet centre, hbar (b + a x_c / 2).
double packet_momentum(const PacketParams& p, double hbar) noexcept;

struct WidthCenter {
    double sigma = 0.0;
    double x_c = 0.0;
};

/// Width and centre after tau. The width depends only on (sigma0, a0) and
/// the stage curvature; the drive enters the centre alone.
WidthCenter packet_width_center(const StageFrequencies& freqs, const PacketParams& initial, double mass,
                                double tau, const PhysicalConstants& constants = {});

struct PhaseTriple {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// u^2 = hbar tan(w tau)/(2 m w) (tanh for the inverted stage, hbar tau/(2m)
/// without curvature). Throws PropagatorCaustic where cos(w tau) vanishes.
double u_squared(const StageFrequencies& freqs, double mass, double tau,
                 const PhysicalConstants& constants = {}, double caustic_tol = 1.0e-12);

/// Phase coefficients after tau. The u-dependent expressions are multiplied
/// through by u^4 cos^2 so that they stay finite across caustics.
PhaseTriple phase_coefficients(const StageFrequencies& freqs, const PacketParams& initial, double mass,
                               double tau, const PhysicalConstants& constants = {});

/// Drive contributions alone (zero when A0 = 0).
PhaseTriple drive_phase_terms(const StageFrequencies& freqs, const PacketParams& initial, double mass,
                              double tau, const PhysicalConstants& constants = {});

PacketParams evolve_packet(const StageFrequencies& freqs, const PacketParams& initial, double mass,
                           double tau, const PhysicalConstants& constants = {});

/// Both arms through all stages, re-seeded from each stage's exit values.
PacketRecord propagate_packet(const Schedule& schedule, const ParticleSpec& particle,
                              const ModelOptions& options = {}, std::size_t samples_per_stage = 400);

}  // namespace sgi
