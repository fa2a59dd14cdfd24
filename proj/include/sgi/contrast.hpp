#pragma once

#include <cstddef>
#include <vector>

#include "sgi/core.hpp"
#include "sgi/trajectory.hpp"
#include "sgi/wavepacket.hpp"

namespace sgi {

struct SpatialContrast {
    double C = 1.0;
    double phi = 0.0;            // (b_R - b_L)(x_R + x_L)/2
    double exponent_dx = 0.0;    // (x_R - x_L)^2 / (8 sigma^2)
    double exponent_db = 0.0;    // sigma^2 (b_R - b_L)^2 / 2
};

/// Overlap modulus of two packets sharing sigma. Throws WidthMismatch when the
/// widths differ by more than width_tol relative.
SpatialContrast spatial_contrast(const PacketParams& left, const PacketParams& right,
                                 double width_tol = 1.0e-9);

/// B_x beta0 - B_y + d eta sin(alpha'), with the field of the last Linear
/// stage evaluated at the arm position.
double script_B(const Schedule& schedule, const ParticleSpec& particle, const SpatialState& arm_at_t5);

/// Shorthand form B0 beta0 - y0 + d eta sin(alpha'), taking y0 as a bare
/// number in metres. Reported for comparison only.
double script_B_literal(const Schedule& schedule, const ParticleSpec& particle);

struct ContrastInputs {
    double delta_alpha = 0.0;     // rad
    double delta_gamma = 0.0;     // rad
    double sigma_p_alpha = 0.0;   // J s
    double sigma_p_gamma = 0.0;   // J s
    double script_B = 0.0;        // T
    double omega0 = 0.0;          // rad/s
    double inertia = 0.0;         // kg m^2
    double n_occ = 0.0;
    double mu_nv = 0.0;           // J/T
};

ContrastInputs contrast_inputs(const ParticleSpec& particle, double delta_alpha, double delta_gamma,
                               double script_b, double n_occ);

struct RotationalContrast {
    double C_thermal_bound = 1.0;
    double C_zero_temperature = 1.0;
    double term_alpha = 0.0;      // delta_alpha^2 sigma_p_alpha^2 / (2 hbar^2)
    double term_gamma = 0.0;      // delta_gamma^2 sigma_p_gamma^2 / (2 hbar^2)
    double term_thermal = 0.0;    // 16 (1 + 2n) mu^2 B^2 / (hbar I Omega0^3)
    double term_zero_temperature = 0.0;
    double log_C = 0.0;
};

RotationalContrast rotational_contrast(const ContrastInputs& in, const PhysicalConstants& constants = {});

/// Upper bound on the coherent-state amplitude of the libration mode at t5,
/// sqrt(I Omega0 / (2 hbar)) 3 mu B0 beta0 / (I Omega0^2).
double kappa_bound(const ParticleSpec& particle, double B0, const PhysicalConstants& constants = {});

/// n = kB T / (hbar Omega0).
double occupation_number(double temperature, double omega0, const PhysicalConstants& constants = {});

struct ContrastReport {
    SpatialContrast spatial;
    RotationalContrast rotational;
    double script_B = 0.0;
    double script_B_literal = 0.0;
    double kappa_bound = 0.0;
};

/// Parameters held fixed across the Omega0 sweep.
struct SweepFixed {
    double delta_q = 0.1;          // rad, used for both alpha and gamma
    double sigma_p = 0.0;          // J s
    double B0 = 0.001;             // T
    double beta0 = 0.01;           // rad
    double y0 = 1.1e-6;            // m
    double eta = 4460.0;           // T/m
    double alpha_prime = 0.0;      // rad
    double mass = 1.0e-15;         // kg
    double radius = 4.0858e-7;     // m
    double mu_nv = 0.0;            // J/T
};

SweepFixed sweep_defaults(const ParticleSpec& particle, const PhysicalConstants& constants = {});

/// Field composite at the packet position (0, y0) of a Linear stage.
double sweep_script_B(const SweepFixed& fixed, double d_off);

struct SweepRow {
    double omega0 = 0.0;
    double d = 0.0;
    double n = 0.0;
    double C = 0.0;
    double term1 = 0.0;
    double term2 = 0.0;
    double term3 = 0.0;
};

/// Rows ordered by (d, n, Omega0) with Omega0 varying fastest.
std::vector<SweepRow> contrast_sweep(const std::vector<double>& omega0_values, const std::vector<double>& d_list,
                                     const std::vector<double>& n_list, const SweepFixed& fixed,
                                     const PhysicalConstants& constants = {});

std::vector<double> log_space(double lo, double hi, std::size_t points);

}  // namespace sgi
