#include "sgi/wavepacket.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "sgi/errors.hpp"
#include "sgi/quadratic.hpp"

namespace sgi {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw Error(Errc::InvalidArgument, "propagation time must be non-negative");
}

double norm_modulus(double sigma) { return std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25); }

// Continuous argument of X = c + Z0 s, the classical amplitude of the
// complex-width representation. Im X >= 0 on each half period.
double continuous_arg_x(double k, double tau, std::complex<double> Z0) {
    if (k < 0.0 && std::abs(k) * tau * tau >= 1.0e-12) {
        const double w = std::sqrt(-k);
        const double th = w * tau;
        const double turns = std::floor(th / std::numbers::pi);
        const double rem = (th - turns * std::numbers::pi) / w;
        const QuadraticFlow f = quadratic_flow(k, rem);
        return turns * std::numbers::pi + std::arg(f.c + Z0 * f.s);
    }
    const QuadraticFlow f = quadratic_flow(k, tau);
    return std::arg(f.c + Z0 * f.s);
}

}  // namespace

PacketParams initial_packet(double sigma0, double x0, double p0, const PhysicalConstants& constants) {
    if (!(sigma0 > 0.0)) throw Error(Errc::InvalidArgument, "sigma0 must be positive");
    PacketParams p;
    p.sigma = sigma0;
    p.x_c = x0;
    p.a = 0.0;
    p.b = p0 / constants.hbar;
    p.c = -p0 * x0 / constants.hbar;
    p.norm_modulus = norm_modulus(sigma0);
    p.norm_phase = 0.0;
    return p;
}

double packet_momentum(const PacketParams& p, double hbar) noexcept { return hbar * (p.b + 0.5 * p.a * p.x_c); }

WidthCenter packet_width_center(const StageFrequencies& freqs, const PacketParams& in, double mass,
                                double tau, const PhysicalConstants& constants) {
    check_tau(tau);
    const double hbar = constants.hbar;
    const double k = freqs.omega_x_eff_sq;
    const QuadraticFlow f = quadratic_flow(k, tau);
    const double s0 = in.sigma;
    const double re = f.c + hbar * in.a * f.s / (2.0 * mass);
    const double im = hbar * f.s / (2.0 * mass * s0 * s0);
    const double v0 = packet_momentum(in, hbar) / mass;
    return {s0 * std::hypot(re, im), in.x_c * f.c + v0 * f.s + freqs.drive_accel * f.g};
}

double u_squared(const StageFrequencies& freqs, double mass, double tau, const PhysicalConstants& constants,
                 double caustic_tol) {
    check_tau(tau);
    const QuadraticFlow f = quadratic_flow(freqs.omega_x_eff_sq, tau);
    if (std::abs(f.c) < caustic_tol) {
        std::ostringstream os;
        os << "propagator caustic at tau = " << tau << " s (cos = " << f.c << ")";
        throw Error(Errc::PropagatorCaustic, os.str());
    }
    return constants.hbar * f.s / (2.0 * mass * f.c);
}

namespace {

PhaseTriple homogeneous_phase(double k, const PacketParams& in, double m, double tau, double hbar) {
    const QuadraticFlow f = quadratic_flow(k, tau);
    const double s4 = std::pow(in.sigma, 4);
    const double a0 = in.a, b0 = in.b, x0 = in.x_c;
    const double U = hbar * f.s;                  // 2 m c u^2
    const double W = 2.0 * m * f.c + a0 * U;      // 2 m c (1 + a0 u^2)
    const double Us = U / (in.sigma * in.sigma);  // hbar s / sigma0^2
    const double D = W * W + Us * Us;

    PhaseTriple out;
    out.a = 2.0 * m * (W * (2.0 * m * k * f.s + hbar * f.c * a0) / hbar + f.c * hbar * f.s / s4) / D;
    out.b = (4.0 * m * m * f.c * b0 - m * U * (x0 / s4 - 2.0 * a0 * b0)) / D;
    out.c = in.c + (2.0 * m * f.c * U * x0 * x0 / s4 + U * U * x0 * (4.0 * b0 + a0 * x0) / s4 -
                    4.0 * b0 * b0 * U * W) / (4.0 * D);
    return out;
}

}  // namespace

PhaseTriple phase_coefficients(const StageFrequencies& freqs, const PacketParams& in, double mass,
                               double tau, const PhysicalConstants& constants) {
    check_tau(tau);
    PhaseTriple out = homogeneous_phase(freqs.omega_x_eff_sq, in, mass, tau, constants.hbar);
    const PhaseTriple drive = drive_phase_terms(freqs, in, mass, tau, constants);
    out.b += drive.b;
    out.c += drive.c;
    return out;
}

PhaseTriple drive_phase_terms(const StageFrequencies& freqs, const PacketParams& in, double mass,
                              double tau, const PhysicalConstants& constants) {
    check_tau(tau);
    PhaseTriple out;
    const double F = freqs.drive_accel;  // -A0 / m
    if (F == 0.0) return out;
    const double hbar = constants.hbar;
    const double k = freqs.omega_x_eff_sq;
    const QuadraticFlow f = quadratic_flow(k, tau);
    const double a = homogeneous_phase(k, in, mass, tau, hbar).a;
    const double A0 = -mass * F;
    const double s4 = std::pow(in.sigma, 4);
    const double U = hbar * f.s;
    const double W = 2.0 * mass * f.c + in.a * U;
    // Exact first-order shift of b: m F s / hbar - a F g / 2.
    out.b = mass * F * f.s / hbar - 0.5 * a * F * f.g;
    // First-order phase term in A0.
    out.c = -A0 * f.g * (U * in.x_c - 2.0 * in.b * s4 * W) / (s4 * W * W + U * U);
    return out;
}

PacketParams evolve_packet(const StageFrequencies& freqs, const PacketParams& in, double mass, double tau,
                           const PhysicalConstants& constants) {
    const WidthCenter wc = packet_width_center(freqs, in, mass, tau, constants);
    const PhaseTriple ph = phase_coefficients(freqs, in, mass, tau, constants);
    const std::complex<double> Z0 =
        (constants.hbar / mass) * std::complex<double>(0.5 * in.a, 0.5 / (in.sigma * in.sigma));
    PacketParams out;
    out.sigma = wc.sigma;
    out.x_c = wc.x_c;
    out.a = ph.a;
    out.b = ph.b;
    out.c = ph.c;
    out.norm_modulus = norm_modulus(wc.sigma);
    out.norm_phase = in.norm_phase - 0.5 * continuous_arg_x(freqs.omega_x_eff_sq, tau, Z0);
    return out;
}

PacketRecord propagate_packet(const Schedule& schedule, const ParticleSpec& particle,
                              const ModelOptions& options, std::size_t samples_per_stage) {
    particle.validate();
    const PhysicalConstants& pc = options.constants;
    PacketRecord rec;
    rec.times = schedule_grid(schedule, samples_per_stage);
    for (Arm arm : {Arm::Left, Arm::Right}) {
        std::array<StageFrequencies, kStageCount> freqs;
        std::array<PacketParams, kStageCount> entry;
        PacketParams p = initial_packet(particle.sigma0, 0.0, 0.0, pc);
        for (std::size_t k = 0; k < kStageCount; ++k) {
            const StageConfig& st = schedule.stage(k);
            freqs[k] = stage_frequencies(st, particle, st.spin(arm), options);
            entry[k] = p;
            p = evolve_packet(freqs[k], p, particle.m, st.duration, pc);
        }
        auto& out = arm == Arm::Left ? rec.left : rec.right;
        out.reserve(rec.times.size());
        for (double t : rec.times) {
            const std::size_t k = schedule.stage_index(t);
            out.push_back(evolve_packet(freqs[k], entry[k], particle.m, t - schedule.stage_start(k), pc));
        }
    }
    for (double t : rec.times) rec.stage_index.push_back(schedule.stage_index(t));
    return rec;
}

}  // namespace sgi
