#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sgi/constants.hpp"
#include "sgi/wavepacket.hpp"

namespace sgi::oracle {

struct QuadratureSpec {
    double half_width_sigmas = 12.0;  // domain half-width in units of sigma
    std::size_t nodes = 64;           // initial node count, at least 64
    double tolerance = 1.0e-11;       // relative change allowed on doubling
    std::size_t max_nodes = 1u << 16;
    std::size_t output_nodes = 256;   // points where psi(x, tau) is evaluated
};

/// A wave function sampled on a composite Gauss-Legendre grid.
struct SampledWave {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<std::complex<double>> psi;
};

struct QuadratureResult {
    double sigma = 0.0;   // from the second moment of |psi|^2
    double x_c = 0.0;     // first moment
    double norm = 0.0;    // integral of |psi|^2
    double a = 0.0;       // from a quadratic fit of the unwrapped phase
    double b = 0.0;
    std::size_t nodes_used = 0;
    double convergence = 0.0;  // relative change at the last doubling
    SampledWave wave;
};

/// Sample the Gaussian described by p on x_c +- half_width_sigmas sigma.
SampledWave sample_packet(const PacketParams& p, const QuadratureSpec& spec, std::size_t nodes);

/// psi(x, tau) = integral K(x, tau; x', 0) psi(x', 0) dx' with the Van Vleck
/// kernel of x'' = k x + f built from the classical action. Throws
/// CausticProximity when the kernel is within 1e-3/omega of a focal time and
/// NonConvergedQuadrature when node doubling does not settle.
QuadratureResult propagate_by_quadrature(const PacketParams& initial, double k, double f, double mass,
                                         double tau, const QuadratureSpec& spec = {},
                                         const PhysicalConstants& constants = {});

/// Same evolution split into `pieces` equal steps, each step re-sampled on
/// its own grid. Lets tau sit on a focal time.
QuadratureResult propagate_by_quadrature_steps(const PacketParams& initial, double k, double f, double mass,
                                               double tau, std::size_t pieces, const QuadratureSpec& spec = {},
                                               const PhysicalConstants& constants = {});

/// psi(x) of a closed-form packet, including its normalisation.
std::complex<double> packet_value(const PacketParams& p, double x);

struct Overlap {
    std::complex<double> value;
    double log_modulus = 0.0;
    std::size_t nodes_used = 0;
};

/// integral conj(psi_L) psi_R dx.
Overlap overlap_by_quadrature(const PacketParams& left, const PacketParams& right, const QuadratureSpec& spec = {});

}  // namespace sgi::oracle
