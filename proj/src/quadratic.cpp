#include "sgi/quadratic.hpp"

#include <cmath>

namespace sgi {

QuadraticFlow quadratic_flow(double k, double tau) noexcept {
    QuadraticFlow f;
    const double x = k * tau * tau;
    if (std::abs(x) < 1.0e-12) {
        const double t2 = tau * tau;
        f.c = 1.0 + 0.5 * x;
        f.s = tau * (1.0 + x / 6.0);
        f.g = 0.5 * t2 * (1.0 + x / 12.0);
        return f;
    }
    const double w = std::sqrt(std::abs(k));
    const double th = w * tau;
    if (k < 0.0) {
        const double sh = std::sin(0.5 * th);
        f.c = std::cos(th);
        f.s = std::sin(th) / w;
        f.g = 2.0 * sh * sh / (w * w);
    } else {
        const double sh = std::sinh(0.5 * th);
        f.c = std::cosh(th);
        f.s = std::sinh(th) / w;
        f.g = 2.0 * sh * sh / (w * w);
    }
    return f;
}

PhasePoint flow_point(const QuadraticFlow& f, double k, double force, PhasePoint p0) noexcept {
    return {p0.q * f.c + p0.v * f.s + force * f.g, k * p0.q * f.s + p0.v * f.c + force * f.s};
}

}  // namespace sgi
