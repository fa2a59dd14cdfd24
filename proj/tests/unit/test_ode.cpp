#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "sgi/errors.hpp"
#include "sgi/ode.hpp"

using namespace sgi;

TEST_CASE("exponential decay") {
    ode::IntegratorOptions o;
    o.rel_tol = 1e-10;
    const auto sol = ode::integrate([](double, const double* y, double* dy) { dy[0] = -y[0]; }, {1.0}, 0.0, 1.0, {0.5, 1.0}, o);
    CHECK(sol.final_state[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    REQUIRE(sol.states.size() == 2);
    CHECK(sol.states[0][0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-8));
    CHECK(sol.times[1] == 1.0);
}

TEST_CASE("harmonic oscillator recovers its state after one period") {
    ode::IntegratorOptions o;
    o.rel_tol = 1e-10;
    o.abs_tol = 1e-12;
    const double T = 2.0 * std::numbers::pi;
    const auto sol = ode::integrate(
        [](double, const double* y, double* dy) {
            dy[0] = y[1];
            dy[1] = -y[0];
        },
        {1.0, 0.0}, 0.0, T, {}, o);
    CHECK(std::abs(sol.final_state[0] - 1.0) < 10 * o.rel_tol * 10);
    CHECK(std::abs(sol.final_state[1]) < 10 * o.rel_tol * 10);
}

TEST_CASE("dense output is accurate between steps") {
    ode::IntegratorOptions o;
    o.rel_tol = 1e-11;
    o.abs_tol = 1e-13;
    std::vector<double> ts;
    for (int i = 0; i <= 100; ++i) ts.push_back(0.1 * i);
    const auto sol = ode::integrate(
        [](double, const double* y, double* dy) {
            dy[0] = y[1];
            dy[1] = -y[0];
        },
        {0.0, 1.0}, 0.0, 10.0, ts, o);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(std::abs(sol.states[i][0] - std::sin(ts[i])) < 1e-8);
}

TEST_CASE("non-finite derivative is reported") {
    try {
        ode::integrate([](double, const double*, double* dy) { dy[0] = std::numeric_limits<double>::quiet_NaN(); }, {1.0},
                       0.0, 1.0, {});
        FAIL("expected NonFiniteDerivative");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonFiniteDerivative);
    }
}

TEST_CASE("blow-up underflows the step size") {
    try {
        ode::integrate([](double, const double* y, double* dy) { dy[0] = y[0] * y[0]; }, {1.0}, 0.0, 2.0, {});
        FAIL("expected an integration failure");
    } catch (const Error& e) {
        CHECK((e.code() == Errc::StepSizeUnderflow || e.code() == Errc::NonFiniteDerivative));
    }
}

TEST_CASE("options validation") {
    ode::IntegratorOptions o;
    o.rel_tol = 0.0;
    CHECK_THROWS_AS(o.validate(), Error);
    ode::IntegratorOptions ok;
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_AS(ode::integrate([](double, const double*, double* dy) { dy[0] = 0; }, {0.0}, 1.0, 0.0, {}), Error);
    CHECK_THROWS_AS(ode::integrate([](double, const double*, double* dy) { dy[0] = 0; }, {0.0}, 0.0, 1.0, {2.0}), Error);
}
