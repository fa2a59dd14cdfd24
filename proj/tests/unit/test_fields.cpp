#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sgi/config.hpp"
#include "sgi/errors.hpp"
#include "sgi/fields.hpp"

using namespace sgi;

TEST_CASE("linear profile values") {
    const auto st = table1_stages();
    const FieldSample o = field_at(st[0], 0.0, 0.0);
    CHECK(o.Bx == doctest::Approx(0.001));
    CHECK(o.By == 0.0);
    const FieldSample p = field_at(st[0], 1e-6, 2e-6);
    CHECK(p.Bx == doctest::Approx(0.006).epsilon(1e-12));
    CHECK(p.By == doctest::Approx(-0.01).epsilon(1e-12));
}

TEST_CASE("non-linear profile values") {
    const auto st = table1_stages();
    const FieldSample f = field_at(st[1], 1e-6, 0.0);
    CHECK(f.Bx == doctest::Approx(0.1 - 5e6 * 1e-12).epsilon(1e-15));
    CHECK(f.By == 0.0);
    const FieldSample g = field_at(st[1], 1e-6, 2e-6);
    CHECK(g.By == doctest::Approx(2.0 * 5e6 * 2e-12).epsilon(1e-12));
}

TEST_CASE("schedule lookup by time") {
    const Schedule s = build_schedule(table1_stages());
    CHECK(field_at(s, 0.001, 0.0, 0.0).Bx == doctest::Approx(0.001));
    CHECK(field_at(s, 0.05, 0.0, 0.0).Bx == doctest::Approx(0.1));
    CHECK_THROWS_AS(field_at(s, 1.0, 0.0, 0.0), Error);
}

TEST_CASE("derived frequencies") {
    const RunConfig c = table1_preset();
    const double mu0 = c.constants.mu0;
    const double wl = stage_omega(c.stages[0], c.particle.chi_rho, mu0);
    CHECK(wl == doctest::Approx(5000.0 * std::sqrt(6.2e-9 / mu0)).epsilon(1e-14));
    CHECK(wl == doctest::Approx(351.2).epsilon(1e-3));
    CHECK(wl * wl == doctest::Approx(-c.particle.chi_rho * 5000.0 * 5000.0 / mu0).epsilon(1e-14));
    const double wnl = stage_omega(c.stages[1], c.particle.chi_rho, mu0);
    CHECK(wnl == doctest::Approx(70.24).epsilon(1e-3));
    CHECK(wnl * wnl == doctest::Approx(-2.0 * c.particle.chi_rho * 0.1 * 5e6 / mu0).epsilon(1e-14));

    // printed quarter period is 0.28 % away from the value implied by the gradient
    const double rel = std::abs(std::numbers::pi / (2.0 * wl) - 0.0044601) / 0.0044601;
    CHECK(rel == doctest::Approx(0.0028).epsilon(0.02));
}

TEST_CASE("stage frequencies and drive") {
    const RunConfig c = table1_preset();
    const ParticleSpec& p = c.particle;
    const auto fl = stage_frequencies(c.stages[0], p, SpinState(1));
    const double mu0 = c.constants.mu0;
    const double eta = 5000.0;
    CHECK(fl.A0 == doctest::Approx(p.mu_nv * eta - p.chi_rho * p.m * 0.001 * eta / mu0).epsilon(1e-14));
    CHECK(fl.drive_accel == doctest::Approx(-fl.A0 / p.m).epsilon(1e-14));
    CHECK(fl.omega_x_eff_sq == doctest::Approx(-fl.omega_stage * fl.omega_stage));
    const auto fr = stage_frequencies(c.stages[0], p, SpinState(-1));
    // bias parts agree, spin parts cancel
    CHECK(0.5 * (fl.A0 + fr.A0) == doctest::Approx(-p.chi_rho * p.m * 0.001 * eta / mu0).epsilon(1e-12));

    const auto fn = stage_frequencies(c.stages[1], p, SpinState(0));
    CHECK(fn.A0 == 0.0);
    CHECK(fn.omega_x_eff_sq == doctest::Approx(fn.omega_stage * fn.omega_stage));
    CHECK(fn.kappa_nl == doctest::Approx(std::sqrt(-p.chi_rho * 5e6 * 5e6 / mu0)));

    StageConfig flat = c.stages[0];
    flat.eta = 0.0;
    CHECK(stage_omega(flat, p.chi_rho, mu0) == 0.0);

    ParticleSpec para = p;
    para.chi_rho = 1e-9;
    CHECK_THROWS_AS(stage_frequencies(c.stages[0], para, SpinState(1)), Error);
}

TEST_CASE("bias displacement identity") {
    const RunConfig c = table1_preset();
    const ParticleSpec& p = c.particle;
    const double wl = stage_omega(c.stages[0], p.chi_rho, c.constants.mu0);
    const double bias = p.chi_rho * 0.001 * 5000.0 / (c.constants.mu0 * wl * wl);
    CHECK(-bias == doctest::Approx(0.001 / 5000.0).epsilon(1e-13));
}

TEST_CASE("y-channel effective frequencies follow the trap sign") {
    const RunConfig c = table1_preset();
    const ParticleSpec& p = c.particle;
    const auto st = c.stages[0];
    const double wl2 = std::pow(stage_omega(st, p.chi_rho, c.constants.mu0), 2);
    const double wy2 = st.omega_y * st.omega_y;
    ModelOptions as_written;
    CHECK(stage_frequencies(st, p, SpinState(1), as_written).omega_y_eff_sq == doctest::Approx(wy2 - wl2));
    ModelOptions conventional;
    conventional.trap_sign = TrapSign::Conventional;
    CHECK(stage_frequencies(st, p, SpinState(1), conventional).omega_y_eff_sq == doctest::Approx(-(wy2 + wl2)));
    ModelOptions off;
    off.trap_on = false;
    CHECK(stage_frequencies(st, p, SpinState(1), off).omega_y_eff_sq == doctest::Approx(-wl2));
}

TEST_CASE("non-linear validity") {
    const RunConfig c = table1_preset();
    const auto v10 = check_nonlinear_validity(c.stages[1], c.particle, 1e-5);
    CHECK(v10.valid);
    CHECK(v10.ratio < 0.01);
    const auto vcm = check_nonlinear_validity(c.stages[1], c.particle, 1e-2);
    CHECK_FALSE(vcm.valid);
    const auto v0 = check_nonlinear_validity(c.stages[1], c.particle, 0.0);
    CHECK(v0.valid);
    CHECK(v0.ratio == 0.0);
    CHECK_THROWS_AS(check_nonlinear_validity(c.stages[0], c.particle, 1e-6), Error);
}

TEST_CASE("ground state width") {
    const RunConfig c = table1_preset();
    const double wl = stage_omega(c.stages[0], c.particle.chi_rho, c.constants.mu0);
    CHECK(c.particle.sigma0 == doctest::Approx(std::sqrt(c.constants.hbar / (2.0 * c.particle.m * wl))));
}

TEST_CASE("fields are continuous within a stage") {
    const Schedule s = build_schedule(table1_stages());
    for (std::size_t k = 0; k < 5; ++k) {
        const double t = 0.5 * (s.stage_start(k) + s.stage_end(k));
        const FieldSample a = field_at(s, t, 1e-6, 1e-6);
        const FieldSample b = field_at(s, t + 1e-9, 1e-6 + 1e-12, 1e-6);
        CHECK(std::abs(a.Bx - b.Bx) < 1e-6);
        CHECK(std::abs(a.By - b.By) < 1e-6);
    }
}
