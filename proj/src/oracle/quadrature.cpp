#include "sgi/oracle/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sgi/errors.hpp"
#include "sgi/oracle/gauss_legendre.hpp"

namespace sgi::oracle {

namespace {

using cplx = std::complex<double>;
constexpr std::size_t kPanelOrder = 16;

// c, s, g and G = integral of g over [0, tau] for q'' = k q.
struct Flow {
    double c, s, g, G;
};

Flow flow(double k, double tau) {
    const double z = k * tau * tau;
    if (std::abs(z) < 1.0e-3) {
        const double t2 = tau * tau;
        const double c = 1.0 + z / 2.0 + z * z / 24.0 + z * z * z / 720.0 + z * z * z * z / 40320.0;
        const double s = tau * (1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0 + z * z * z * z / 362880.0);
        const double g = t2 * (0.5 + z / 24.0 + z * z / 720.0 + z * z * z / 40320.0 + z * z * z * z / 3628800.0);
        const double G = t2 * tau * (1.0 / 6.0 + z / 120.0 + z * z / 5040.0 + z * z * z / 362880.0);
        return {c, s, g, G};
    }
    const double w = std::sqrt(std::abs(k));
    const double th = w * tau;
    if (k < 0.0) {
        const double sh = std::sin(0.5 * th);
        const double s = std::sin(th) / w;
        return {std::cos(th), s, 2.0 * sh * sh / (w * w), (tau - s) / (w * w)};
    }
    const double sh = std::sinh(0.5 * th);
    const double s = std::sinh(th) / w;
    return {std::cosh(th), s, 2.0 * sh * sh / (w * w), (s - tau) / (w * w)};
}

// Van Vleck kernel of x'' = k x + F from the classical action, expanded about
// a reference pair (x_r, xp_r). The action is quadratic so the expansion is
// exact; the constant S(x_r, xp_r) only sets a global phase.
struct Kernel {
    Flow fl;
    double k, F, m, hbar;
    double x_r = 0.0, xp_r = 0.0;
    double p_out = 0.0, p_in = 0.0;  // m v(tau), m v(0) on the reference path
    cplx prefactor;

    Kernel(double k_, double F_, double m_, double tau, double hbar_) : fl(flow(k_, tau)), k(k_), F(F_), m(m_), hbar(hbar_) {}

    void anchor(double x, double xp) {
        x_r = x;
        xp_r = xp;
        const double v0 = (x - xp * fl.c - F * fl.g) / fl.s;
        const double vt = k * xp * fl.s + v0 * fl.c + F * fl.s;
        const double S = 0.5 * m * (x * vt - xp * v0) + 0.5 * m * F * (xp * fl.s + v0 * fl.g + F * fl.G);
        p_out = m * vt;
        p_in = m * v0;
        prefactor = std::sqrt(cplx(m / (2.0 * std::numbers::pi * hbar * fl.s), 0.0) / cplx(0.0, 1.0)) *
                    std::polar(1.0, std::remainder(S / hbar, 2.0 * std::numbers::pi));
    }

    cplx operator()(double x, double xp) const {
        const double d = x - x_r;
        const double dp = xp - xp_r;
        const double S = p_out * d - p_in * dp + 0.5 * m * (fl.c * (d * d + dp * dp) - 2.0 * d * dp) / fl.s;
        return prefactor * std::polar(1.0, S / hbar);
    }
};

struct Moments {
    double norm = 0.0, mean = 0.0, sigma = 0.0, a = 0.0, b = 0.0;
};

Moments moments(const SampledWave& w) {
    Moments m;
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        const double p = std::norm(w.psi[i]) * w.w[i];
        s0 += p;
        s1 += p * w.x[i];
    }
    if (!(s0 > 0.0)) throw Error(Errc::NonConvergedQuadrature, "wave function vanished on the grid");
    m.norm = s0;
    m.mean = s1 / s0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        const double d = w.x[i] - m.mean;
        s2 += std::norm(w.psi[i]) * w.w[i] * d * d;
    }
    m.sigma = std::sqrt(s2 / s0);

    // Least-squares fit of the unwrapped phase, phi = A u^2 + B u + C with
    // u = (x - mean)/sigma, over the central +-3 sigma.
    std::array<std::array<double, 4>, 3> M{};
    double prev = 0.0, offset = 0.0;
    bool first = true;
    bool aliased = false;
    std::size_t used = 0;
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        const double u = (w.x[i] - m.mean) / m.sigma;
        if (std::abs(u) > 3.0) continue;
        double ph = std::arg(w.psi[i]);
        if (!first) {
            while (ph + offset - prev > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
            while (ph + offset - prev < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
        }
        ph += offset;
        if (!first && std::abs(ph - prev) > 2.5) aliased = true;
        prev = ph;
        first = false;
        const double basis[3] = {u * u, u, 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) M[r][c] += basis[r] * basis[c];
            M[r][3] += basis[r] * ph;
        }
        ++used;
    }
    m.a = m.b = std::numeric_limits<double>::quiet_NaN();
    if (used >= 3 && !aliased) {
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
            std::swap(M[col], M[piv]);
            for (int r = 0; r < 3; ++r) {
                if (r == col) continue;
                const double f = M[r][col] / M[col][col];
                for (int c = col; c < 4; ++c) M[r][c] -= f * M[col][c];
            }
        }
        const double A = M[0][3] / M[0][0];
        const double B = M[1][3] / M[1][1];
        const double s2i = 1.0 / (m.sigma * m.sigma);
        m.a = 4.0 * A * s2i;
        m.b = B / m.sigma - 2.0 * A * m.mean * s2i;
    }
    return m;
}

SampledWave apply(Kernel K, const SampledWave& in, const CompositeGrid& out) {
    K.anchor(0.5 * (out.x.front() + out.x.back()), 0.5 * (in.x.front() + in.x.back()));
    SampledWave w;
    w.x = out.x;
    w.w = out.w;
    w.psi.resize(out.x.size());
    for (std::size_t j = 0; j < out.x.size(); ++j) {
        cplx sum = 0.0;
        for (std::size_t i = 0; i < in.x.size(); ++i) sum += in.w[i] * in.psi[i] * K(out.x[j], in.x[i]);
        w.psi[j] = sum;
    }
    return w;
}

void check_caustic(double k, double tau) {
    if (k >= 0.0 || tau == 0.0) return;
    const double th = std::sqrt(-k) * tau;
    const double j = std::round(th / std::numbers::pi);
    if (j >= 1.0 && std::abs(th - j * std::numbers::pi) < 1.0e-3) {
        std::ostringstream os;
        os << "kernel focal time: omega tau = " << th << " is within 1e-3 of " << j << " pi";
        throw Error(Errc::CausticProximity, os.str());
    }
}

std::size_t panels_for(std::size_t nodes) { return std::max<std::size_t>(1, nodes / kPanelOrder); }

// One step with two-pass placement of the output grid.
SampledWave step(const SampledWave& in, double k, double F, double m, double tau, std::size_t nodes,
                 double L, double hbar) {
    check_caustic(k, tau);
    const Kernel K(k, F, m, tau, hbar);
    const Moments mi = moments(in);
    const bool phase_known = std::isfinite(mi.a) && std::isfinite(mi.b);
    const double v = phase_known ? hbar * (mi.b + 0.5 * mi.a * mi.mean) / m : 0.0;
    const Flow& f = K.fl;
    const double center = mi.mean * f.c + v * f.s + F * f.g;
    double width = mi.sigma * std::abs(f.c) + hbar * std::abs(f.s) / (2.0 * m * mi.sigma) +
                   (phase_known ? hbar * std::abs(mi.a * f.s) * mi.sigma / (2.0 * m) : 0.0);
    const QuadratureRule rule = gauss_legendre(kPanelOrder);

    SampledWave probe;
    Moments mo;
    for (int attempt = 0;; ++attempt) {
        const double half = 2.0 * L * width;
        probe = apply(K, in, composite_grid(center - half, center + half, panels_for(nodes), rule));
        mo = moments(probe);
        if (mo.norm > 0.999 * mi.norm) break;
        if (attempt >= 6) throw Error(Errc::NonConvergedQuadrature, "output grid does not capture the packet");
        width *= 2.0;
    }
    return apply(K, in, composite_grid(mo.mean - L * mo.sigma, mo.mean + L * mo.sigma, panels_for(nodes), rule));
}

QuadratureResult finish(SampledWave w, std::size_t nodes) {
    const Moments m = moments(w);
    QuadratureResult r;
    r.sigma = m.sigma;
    r.x_c = m.mean;
    r.norm = m.norm;
    r.a = m.a;
    r.b = m.b;
    r.nodes_used = nodes;
    r.wave = std::move(w);
    return r;
}

}  // namespace

std::complex<double> packet_value(const PacketParams& p, double x) {
    const double d = x - p.x_c;
    const double re = -d * d / (4.0 * p.sigma * p.sigma);
    const double im = 0.25 * p.a * x * x + p.b * x + p.c + p.norm_phase;
    return p.norm_modulus * std::exp(re) * std::polar(1.0, im);
}

SampledWave sample_packet(const PacketParams& p, const QuadratureSpec& spec, std::size_t nodes) {
    const double half = spec.half_width_sigmas * p.sigma;
    const CompositeGrid g =
        composite_grid(p.x_c - half, p.x_c + half, panels_for(nodes), gauss_legendre(kPanelOrder));
    SampledWave w;
    w.x = g.x;
    w.w = g.w;
    w.psi.reserve(g.x.size());
    for (double x : g.x) w.psi.push_back(packet_value(p, x));
    return w;
}

QuadratureResult propagate_by_quadrature_steps(const PacketParams& initial, double k, double f, double mass,
                                               double tau, std::size_t pieces, const QuadratureSpec& spec,
                                               const PhysicalConstants& constants) {
    if (spec.nodes < 64) throw Error(Errc::InvalidArgument, "quadrature needs at least 64 nodes");
    if (spec.half_width_sigmas < 8.0) throw Error(Errc::InvalidArgument, "quadrature domain must cover 8 sigma");
    if (!(tau >= 0.0) || pieces == 0 || !(mass > 0.0) || !(initial.sigma > 0.0))
        throw Error(Errc::InvalidArgument, "invalid quadrature propagation arguments");
    const double piece = tau / static_cast<double>(pieces);
    if (tau > 0.0)
        for (std::size_t j = 1; j <= pieces; ++j) check_caustic(k, piece);

    auto run = [&](std::size_t nodes) {
        SampledWave w = sample_packet(initial, spec, nodes);
        if (tau > 0.0)
            for (std::size_t j = 0; j < pieces; ++j)
                w = step(w, k, f, mass, piece, nodes, spec.half_width_sigmas, constants.hbar);
        return finish(std::move(w), nodes);
    };

    std::size_t nodes = spec.nodes;
    QuadratureResult prev = run(nodes);
    for (;;) {
        nodes *= 2;
        if (nodes > spec.max_nodes) {
            std::ostringstream os;
            os << "no agreement to " << spec.tolerance << " up to " << spec.max_nodes << " nodes";
            throw Error(Errc::NonConvergedQuadrature, os.str());
        }
        QuadratureResult cur = run(nodes);
        const double delta =
            std::max(std::abs(cur.sigma - prev.sigma), std::abs(cur.x_c - prev.x_c)) / cur.sigma;
        cur.convergence = delta;
        if (delta < spec.tolerance) return cur;
        prev = std::move(cur);
    }
}

QuadratureResult propagate_by_quadrature(const PacketParams& initial, double k, double f, double mass, double tau,
                                         const QuadratureSpec& spec, const PhysicalConstants& constants) {
    return propagate_by_quadrature_steps(initial, k, f, mass, tau, 1, spec, constants);
}

Overlap overlap_by_quadrature(const PacketParams& left, const PacketParams& right, const QuadratureSpec& spec) {
    if (!(left.sigma > 0.0) || !(right.sigma > 0.0)) throw Error(Errc::InvalidArgument, "packet widths must be positive");
    const double L = spec.half_width_sigmas;
    const double lo = std::min(left.x_c - L * left.sigma, right.x_c - L * right.sigma);
    const double hi = std::max(left.x_c + L * left.sigma, right.x_c + L * right.sigma);
    const QuadratureRule rule = gauss_legendre(kPanelOrder);
    auto run = [&](std::size_t nodes) {
        const CompositeGrid g = composite_grid(lo, hi, panels_for(nodes), rule);
        return integrate([&](double x) { return std::conj(packet_value(left, x)) * packet_value(right, x); }, g);
    };
    std::size_t nodes = spec.nodes;
    cplx prev = run(nodes);
    for (;;) {
        nodes *= 2;
        if (nodes > spec.max_nodes) throw Error(Errc::NonConvergedQuadrature, "overlap quadrature did not settle");
        const cplx cur = run(nodes);
        if (std::abs(cur - prev) <= spec.tolerance * std::abs(cur) || std::abs(cur - prev) < 1.0e-300)
            return {cur, std::log(std::abs(cur)), nodes};
        prev = cur;
    }
}

}  // namespace sgi::oracle
