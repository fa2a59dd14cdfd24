#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "sgi/config.hpp"
#include "sgi/errors.hpp"
#include "sgi/fields.hpp"
#include "sgi/oracle/quadrature.hpp"
#include "sgi/trajectory.hpp"
#include "sgi/wavepacket.hpp"

using namespace sgi;

namespace {

RunConfig preset() { return table1_preset(); }

StageFrequencies undriven(const StageFrequencies& f) {
    StageFrequencies g = f;
    g.A0 = 0.0;
    g.drive_accel = 0.0;
    return g;
}

}  // namespace

TEST_CASE("initial packet") {
    const PhysicalConstants k;
    const PacketParams p = initial_packet(1e-11, 2e-11, 3.0 * k.hbar / 1e-11, k);
    CHECK(p.sigma == 1e-11);
    CHECK(p.a == 0.0);
    CHECK(p.b == doctest::Approx(3.0 / 1e-11));
    CHECK(p.c == doctest::Approx(-3.0 * 2.0));
    CHECK(p.norm_modulus == doctest::Approx(std::pow(2.0 * std::numbers::pi * 1e-22, -0.25)));
    CHECK(packet_momentum(p, k.hbar) == doctest::Approx(3.0 * k.hbar / 1e-11));
}

TEST_CASE("zero time is the identity") {
    const RunConfig c = preset();
    for (int k : {0, 1}) {
        const auto f = stage_frequencies(c.stages[k], c.particle, c.stages[k].spin_left);
        PacketParams in = initial_packet(c.particle.sigma0, 3e-11, 2e-3 * c.constants.hbar / c.particle.sigma0);
        const WidthCenter wc = packet_width_center(f, in, c.particle.m, 0.0);
        CHECK(wc.sigma == in.sigma);
        CHECK(wc.x_c == in.x_c);
        const PacketParams out = evolve_packet(f, in, c.particle.m, 0.0);
        CHECK(out.a == doctest::Approx(in.a));
        CHECK(out.b == doctest::Approx(in.b));
        CHECK(out.c == doctest::Approx(in.c));
    }
}

TEST_CASE("harmonic refocus at half period") {
    const RunConfig c = preset();
    const auto f = undriven(stage_frequencies(c.stages[0], c.particle, SpinState(1)));
    const PacketParams in = initial_packet(1.7 * c.particle.sigma0, 5e-11, 0.0);
    const WidthCenter wc = packet_width_center(f, in, c.particle.m, std::numbers::pi / f.omega_stage);
    CHECK(wc.x_c == doctest::Approx(-in.x_c).epsilon(1e-9));
    CHECK(wc.sigma == doctest::Approx(in.sigma).epsilon(1e-9));
}

TEST_CASE("ground-state width is stationary and breathing has period pi/omega") {
    const RunConfig c = preset();
    const auto f = undriven(stage_frequencies(c.stages[0], c.particle, SpinState(1)));
    const double T = std::numbers::pi / f.omega_stage;
    const PacketParams g = initial_packet(c.particle.sigma0, 0.0, 0.0);
    const PacketParams w = initial_packet(2.0 * c.particle.sigma0, 0.0, 0.0);
    for (int i = 1; i <= 20; ++i) {
        const double t = 0.13 * i * T;
        CHECK(packet_width_center(f, g, c.particle.m, t).sigma == doctest::Approx(g.sigma).epsilon(1e-12));
        CHECK(packet_width_center(f, w, c.particle.m, t + T).sigma ==
              doctest::Approx(packet_width_center(f, w, c.particle.m, t).sigma).epsilon(1e-9));
    }
}

TEST_CASE("inverted stage: width grows monotonically and matches quadrature") {
    const RunConfig c = preset();
    const auto f = stage_frequencies(c.stages[1], c.particle, SpinState(0));
    const PacketParams in = initial_packet(c.particle.sigma0, 0.0, 0.0);
    double prev = in.sigma;
    for (int i = 1; i <= 50; ++i) {
        const double s = packet_width_center(f, in, c.particle.m, i * 0.002).sigma;
        CHECK(s > prev);
        prev = s;
    }
    for (double wt : {0.5, 1.0, 2.0}) {
        const double tau = wt / f.omega_stage;
        const auto q = oracle::propagate_by_quadrature(in, f.omega_x_eff_sq, 0.0, c.particle.m, tau);
        const WidthCenter wc = packet_width_center(f, in, c.particle.m, tau);
        CHECK(std::abs(wc.sigma - q.sigma) / q.sigma < 1e-6);
        CHECK(std::abs(wc.x_c - q.x_c) < 1e-6 * q.sigma);
    }
}

TEST_CASE("phase coefficients agree with the quadrature phase fit") {
    const RunConfig c = preset();
    const double s0 = c.particle.sigma0;
    const auto f = stage_frequencies(c.stages[1], c.particle, SpinState(0));
    PacketParams in = initial_packet(s0, 2.0 * s0, 0.3 * c.constants.hbar / s0);
    in.a = 0.1 / (s0 * s0);
    const double tau = 0.7 / f.omega_stage;
    const PacketParams out = evolve_packet(f, in, c.particle.m, tau);
    const auto q = oracle::propagate_by_quadrature(in, f.omega_x_eff_sq, 0.0, c.particle.m, tau);
    CHECK(out.a == doctest::Approx(q.a).epsilon(1e-6));
    CHECK(out.b == doctest::Approx(q.b).epsilon(1e-6));
}

TEST_CASE("packet center is the maximum of |psi|^2") {
    const RunConfig c = preset();
    const auto f = stage_frequencies(c.stages[0], c.particle, SpinState(-1));
    const PacketParams in = initial_packet(c.particle.sigma0, 0.0, 0.0);
    for (double frac : {0.3, 0.6, 0.9}) {
        const PacketParams p = evolve_packet(f, in, c.particle.m, frac * c.stages[0].duration);
        double best_x = 0.0, best = -1.0;
        const int n = 4001;
        for (int i = 0; i < n; ++i) {
            const double x = p.x_c + (i - n / 2) * 1e-3 * p.sigma;
            const double v = std::norm(oracle::packet_value(p, x));
            if (v > best) {
                best = v;
                best_x = x;
            }
        }
        CHECK(std::abs(best_x - p.x_c) <= 1e-8 * std::abs(p.x_c) + 1e-3 * p.sigma);
    }
}

TEST_CASE("drive leaves the width unchanged and vanishes with A0") {
    const RunConfig c = preset();
    const auto f = stage_frequencies(c.stages[0], c.particle, SpinState(1));
    const PacketParams in = initial_packet(1.3 * c.particle.sigma0, 0.0, 0.0);
    const double tau = 0.003;
    CHECK(packet_width_center(f, in, c.particle.m, tau).sigma ==
          packet_width_center(undriven(f), in, c.particle.m, tau).sigma);
    const PhaseTriple d = drive_phase_terms(undriven(f), in, c.particle.m, tau);
    CHECK(d.a == 0.0);
    CHECK(d.b == 0.0);
    CHECK(d.c == 0.0);
}

TEST_CASE("caustics of u") {
    const RunConfig c = preset();
    const auto f = stage_frequencies(c.stages[0], c.particle, SpinState(1));
    const double tau = std::numbers::pi / (2.0 * f.omega_stage);
    try {
        u_squared(f, c.particle.m, tau);
        FAIL("expected PropagatorCaustic");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PropagatorCaustic);
    }
    // the packet itself is regular there
    const PacketParams p = evolve_packet(f, initial_packet(c.particle.sigma0, 0.0, 0.0), c.particle.m, tau);
    CHECK(std::isfinite(p.a));
    CHECK(std::isfinite(p.b));
    CHECK(p.sigma > 0.0);
}

TEST_CASE("chained packets follow the classical trajectory") {
    const RunConfig c = preset();
    const Schedule s = c.schedule();
    const PacketRecord pr = propagate_packet(s, c.particle, {}, 200);
    const TrajectoryRecord tr = run_interferometer(s, c.particle, {}, 200);
    REQUIRE(pr.times.size() == tr.times.size());
    double xmax = 0.0;
    for (const auto& st : tr.left) xmax = std::max(xmax, std::abs(st.x));
    for (std::size_t i = 0; i < pr.times.size(); ++i) {
        CHECK(pr.times[i] == tr.times[i]);
        CHECK(std::abs(pr.left[i].x_c - tr.left[i].x) <= 1e-9 * xmax);
        CHECK(std::abs(pr.right[i].x_c - tr.right[i].x) <= 1e-9 * xmax);
        CHECK(pr.left[i].sigma == pr.right[i].sigma);
    }
    CHECK(pr.left.front().sigma == c.particle.sigma0);
}

TEST_CASE("bias does not touch the width") {
    const RunConfig c = preset();
    auto no_bias = c.stages;
    for (auto& st : no_bias)
        if (st.kind == StageKind::Linear) st.B0 = 0.0;
    const PacketRecord a = propagate_packet(c.schedule(), c.particle, {}, 100);
    const PacketRecord b = propagate_packet(build_schedule(no_bias), c.particle, {}, 100);
    for (std::size_t i = 0; i < a.times.size(); ++i) CHECK(a.left[i].sigma == b.left[i].sigma);
}

TEST_CASE("stage-2 width amplification") {
    const RunConfig c = preset();
    const Schedule s = c.schedule();
    const PacketRecord pr = propagate_packet(s, c.particle, {}, 400);
    const auto at = [&](double t) {
        const auto it = std::find(pr.times.begin(), pr.times.end(), t);
        REQUIRE(it != pr.times.end());
        return pr.left[static_cast<std::size_t>(it - pr.times.begin())];
    };
    const PacketParams p1 = at(s.stage_start(1));
    const double p2 = at(s.stage_start(2)).sigma;
    const double wnl = stage_omega(c.stages[1], c.particle.chi_rho, c.constants.mu0);
    const double T = c.stages[1].duration;
    // the ground-state packet enters with a flat phase
    CHECK(std::abs(p1.a) * p1.sigma * p1.sigma < 1e-12);
    const double spread = c.constants.hbar / (2.0 * c.particle.m * p1.sigma * p1.sigma * wnl);
    const double expected = std::hypot(std::cosh(wnl * T), spread * std::sinh(wnl * T));
    CHECK(p2 / p1.sigma == doctest::Approx(expected).epsilon(1e-9));
    CHECK(p2 / p1.sigma >= std::cosh(wnl * T));
}
