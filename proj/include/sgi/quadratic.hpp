#pragma once

namespace sgi {

/// Fundamental solutions of q'' = k q over a time tau.
///   c = cos(w tau) | cosh(w tau) | 1
///   s = sin(w tau)/w | sinh(w tau)/w | tau
///   g = integral of s = (c - 1)/k
/// so that q(tau) = q0 c + v0 s + f g for q'' = k q + f.
struct QuadraticFlow {
    double c = 1.0;
    double s = 0.0;
    double g = 0.0;
};

/// Switches to a Taylor series when |k| tau^2 < 1e-12.
QuadraticFlow quadratic_flow(double k, double tau) noexcept;

struct PhasePoint {
    double q = 0.0;
    double v = 0.0;
};

PhasePoint flow_point(const QuadraticFlow& f, double k, double force, PhasePoint p0) noexcept;

}  // namespace sgi
