#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "sgi/constants.hpp"
#include "sgi/core.hpp"
#include "sgi/errors.hpp"

using namespace sgi;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an sgi::Error");
    return Errc::Io;
}

}  // namespace

TEST_CASE("constants are positive and h = 2 pi hbar") {
    const PhysicalConstants c;
    CHECK(c.h > 0);
    CHECK(c.hbar > 0);
    CHECK(c.mu0 > 0);
    CHECK(c.kB > 0);
    CHECK(std::abs(c.h - 2.0 * std::numbers::pi * c.hbar) <= 1e-15 * c.h);
    PhysicalConstants bad;
    bad.hbar = -1.0;
    CHECK(code_of([&] { bad.validate(); }) == Errc::InvalidConstants);
}

TEST_CASE("spin state accepts only -1, 0, +1") {
    CHECK(SpinState(-1).value() == -1);
    CHECK(SpinState(0).value() == 0);
    CHECK(SpinState(1).value() == 1);
    CHECK(code_of([] { SpinState(2); }) == Errc::InvalidSpin);
    CHECK(code_of([] { SpinState(-3); }) == Errc::InvalidSpin);
}

TEST_CASE("default particle") {
    const ParticleSpec p = nanodiamond();
    CHECK(p.m == 1e-15);
    CHECK(p.chi_rho < 0);
    CHECK(p.inertia == doctest::Approx(0.4 * p.m * p.radius * p.radius).epsilon(1e-15));
    CHECK(p.mu_nv == doctest::Approx(6.62607015e-34 * 2.8e10).epsilon(1e-15));
    CHECK(p.p_alpha() == doctest::Approx(p.inertia * p.omega0 * std::cos(p.beta0)));
    CHECK(p.p_gamma() == doctest::Approx(p.inertia * p.omega0));
    CHECK(degrees_to_radians(180.0) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("particle validation") {
    ParticleSpec p = nanodiamond();
    p.sigma0 = 1e-11;
    CHECK_NOTHROW(p.validate());
    auto bad = [&](auto mutate) {
        ParticleSpec q = p;
        mutate(q);
        return code_of([&] { q.validate(); });
    };
    CHECK(bad([](ParticleSpec& q) { q.m = 0; }) == Errc::InvalidParticle);
    CHECK(bad([](ParticleSpec& q) { q.chi_rho = 1e-9; }) == Errc::NonNegativeSusceptibility);
    CHECK(bad([](ParticleSpec& q) { q.sigma0 = 0; }) == Errc::InvalidParticle);
    CHECK(bad([](ParticleSpec& q) { q.beta0 = std::numbers::pi; }) == Errc::InvalidParticle);
    CHECK(bad([](ParticleSpec& q) { q.d_off = -1e-9; }) == Errc::InvalidParticle);
}

TEST_CASE("reference schedule transitions") {
    const Schedule s = build_schedule(table1_stages());
    const double expected[5] = {0.0044601, 0.1143601, 0.1154801, 0.2253801, 0.2300478};
    for (int k = 0; k < 5; ++k) CHECK(s.transitions()[k] == doctest::Approx(expected[k]).epsilon(1e-12));
    const double caption[5] = {0.0044601, 0.11436, 0.115484, 0.225385, 0.230052};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(s.transitions()[k] - caption[k]) < 1e-4);
}

TEST_CASE("unit durations give integer transitions") {
    auto st = table1_stages();
    for (auto& c : st) c.duration = 1.0;
    const Schedule s = build_schedule(st);
    for (int k = 0; k < 5; ++k) CHECK(s.transitions()[k] == doctest::Approx(k + 1.0));
}

TEST_CASE("schedule validation errors") {
    auto st = table1_stages();
    std::vector<StageConfig> four(st.begin(), st.begin() + 4);
    CHECK(code_of([&] { build_schedule(four); }) == Errc::WrongStageCount);

    auto swapped = st;
    std::swap(swapped[0], swapped[1]);
    CHECK(code_of([&] { build_schedule(swapped); }) == Errc::KindOrderViolation);

    auto zero = st;
    zero[2].duration = 0.0;
    CHECK(code_of([&] { build_schedule(zero); }) == Errc::NonPositiveDuration);

    auto same_spin = st;
    same_spin[0].spin_right = same_spin[0].spin_left;
    CHECK(code_of([&] { build_schedule(same_spin); }) == Errc::SpinAssignmentViolation);

    auto nl_spin = st;
    nl_spin[1].spin_left = SpinState(1);
    CHECK(code_of([&] { build_schedule(nl_spin); }) == Errc::SpinAssignmentViolation);

    auto neg_eta = st;
    neg_eta[3].eta = -1.0;
    CHECK(code_of([&] { build_schedule(neg_eta); }) == Errc::InvalidStageParameter);
}

TEST_CASE("spin timeline") {
    const Schedule s = build_schedule(table1_stages());
    CHECK(spin_state_at(s, Arm::Left, 0.001).value() == 1);
    CHECK(spin_state_at(s, Arm::Right, 0.001).value() == -1);
    CHECK(spin_state_at(s, Arm::Left, 0.05).value() == 0);
    CHECK(spin_state_at(s, Arm::Right, 0.05).value() == 0);
    CHECK(spin_state_at(s, Arm::Right, 0.229).value() == -1);
    // boundaries resolve to the later stage
    CHECK(spin_state_at(s, Arm::Left, s.transitions()[0]).value() == 0);
    CHECK(spin_state_at(s, Arm::Left, s.transitions()[1]).value() == 1);
    CHECK(spin_state_at(s, Arm::Left, s.total_time()).value() == 1);
    CHECK(code_of([&] { spin_state_at(s, Arm::Left, -1e-9); }) == Errc::TimeOutOfRange);
    CHECK(code_of([&] { spin_state_at(s, Arm::Left, s.total_time() + 1e-6); }) == Errc::TimeOutOfRange);

    const Schedule sw = build_schedule(table1_stages(true));
    CHECK(spin_state_at(sw, Arm::Left, 0.001).value() == -1);
}

TEST_CASE("spin properties over a fine grid") {
    const Schedule s = build_schedule(table1_stages());
    for (double t : schedule_grid(s, 200)) {
        const int l = spin_state_at(s, Arm::Left, t).value();
        const int r = spin_state_at(s, Arm::Right, t).value();
        if (s.stage_at(t).kind == StageKind::NonLinear) {
            CHECK(l == 0);
            CHECK(r == 0);
        } else {
            CHECK(l == -r);
            CHECK(l != 0);
        }
    }
}

TEST_CASE("build_schedule is deterministic") {
    const Schedule a = build_schedule(table1_stages());
    const Schedule b = build_schedule(table1_stages());
    for (int k = 0; k < 5; ++k) CHECK(a.transitions()[k] == b.transitions()[k]);
}

TEST_CASE("schedule grid") {
    const Schedule s = build_schedule(table1_stages());
    const auto g = schedule_grid(s, 100);
    CHECK(g.size() == 501);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == s.total_time());
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK(s.stage_index(0.0) == 0);
    CHECK(s.stage_index(s.total_time()) == 4);
}
