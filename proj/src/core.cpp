#include "sgi/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sgi/errors.hpp"

namespace sgi {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

const char* to_string(StageKind kind) noexcept {
    return kind == StageKind::Linear ? "linear" : "nonlinear";
}

const char* to_string(Arm arm) noexcept { return arm == Arm::Left ? "left" : "right"; }

const char* to_string(TrapSign sign) noexcept {
    return sign == TrapSign::AsWritten ? "as-written" : "conventional";
}

SpinState::SpinState(int s) : s_(s) {
    if (s < -1 || s > 1)
        throw Error(Errc::InvalidSpin, "spin projection must be -1, 0 or +1, got " + std::to_string(s));
}

double ParticleSpec::p_alpha() const noexcept { return inertia * omega0 * std::cos(beta0); }
double ParticleSpec::p_gamma() const noexcept { return inertia * omega0; }

void ParticleSpec::validate() const {
    auto fail = [](const std::string& what) { throw Error(Errc::InvalidParticle, what); };
    for (double v : {m, chi_rho, mu_nv, d_zfs, radius, inertia, d_off, alpha_prime, beta0, omega0,
                     sigma0, y0, sigma_p_alpha, sigma_p_gamma}) {
        if (!finite(v)) fail("particle parameters must be finite");
    }
    if (m <= 0.0) fail("mass must be positive");
    if (chi_rho >= 0.0)
        throw Error(Errc::NonNegativeSusceptibility, "chi_rho must be negative for a diamagnet");
    if (radius <= 0.0) fail("radius must be positive");
    if (inertia <= 0.0) fail("moment of inertia must be positive");
    if (mu_nv < 0.0) fail("NV magnetic moment must be non-negative");
    if (d_off < 0.0) fail("NV offset distance must be non-negative");
    if (sigma0 <= 0.0) fail("initial packet width sigma0 must be positive");
    if (omega0 <= 0.0) fail("Omega0 must be positive");
    if (!(beta0 > 0.0 && beta0 < std::numbers::pi)) fail("beta0 must lie in (0, pi)");
    if (sigma_p_alpha < 0.0 || sigma_p_gamma < 0.0) fail("momentum spreads must be non-negative");
}

double sphere_inertia(double mass, double radius) noexcept { return 0.4 * mass * radius * radius; }

double degrees_to_radians(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

ParticleSpec nanodiamond(const PhysicalConstants& c) {
    ParticleSpec p;
    p.mu_nv = c.h * 2.8e10;
    p.d_zfs = 2.0 * std::numbers::pi * 2.8e9;
    p.inertia = sphere_inertia(p.m, p.radius);
    p.alpha_prime = std::numbers::pi / 6.0;
    p.omega0 = 2.0 * std::numbers::pi * 1.0e4;
    p.sigma_p_alpha = 5.0 * c.hbar;
    p.sigma_p_gamma = 5.0 * c.hbar;
    return p;
}

double Schedule::stage_start(std::size_t k) const {
    if (k >= kStageCount) throw Error(Errc::InvalidArgument, "stage index out of range");
    return k == 0 ? 0.0 : transitions_[k - 1];
}

std::size_t Schedule::stage_index(double t) const {
    if (!(t >= 0.0 && t <= transitions_.back()))
        throw Error(Errc::TimeOutOfRange, "time " + std::to_string(t) + " s is outside the schedule");
    for (std::size_t k = 0; k < kStageCount; ++k)
        if (t < transitions_[k]) return k;
    return kStageCount - 1;
}

Schedule build_schedule(std::span<const StageConfig> configs) {
    if (configs.size() != kStageCount)
        throw Error(Errc::WrongStageCount,
                    "expected 5 stages, got " + std::to_string(configs.size()));
    Schedule s;
    double t = 0.0;
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& c = configs[k];
        const StageKind expected = (k % 2 == 0) ? StageKind::Linear : StageKind::NonLinear;
        const std::string label = "stage " + std::to_string(k + 1);
        if (c.kind != expected)
            throw Error(Errc::KindOrderViolation,
                        label + " must be " + to_string(expected));
        if (!finite(c.duration) || c.duration <= 0.0)
            throw Error(Errc::NonPositiveDuration, label + " duration must be positive");
        if (!finite(c.eta) || c.eta <= 0.0)
            throw Error(Errc::InvalidStageParameter, label + " gradient eta must be positive");
        if (!finite(c.B0) || !finite(c.omega_x) || !finite(c.omega_y))
            throw Error(Errc::InvalidStageParameter, label + " parameters must be finite");
        if (c.kind == StageKind::NonLinear && c.B0 <= 0.0)
            throw Error(Errc::InvalidStageParameter, label + " bias B0 must be positive");
        if (c.omega_x < 0.0 || c.omega_y < 0.0)
            throw Error(Errc::InvalidStageParameter, label + " trap frequencies must be non-negative");
        if (c.kind == StageKind::NonLinear) {
            if (c.spin_left.value() != 0 || c.spin_right.value() != 0)
                throw Error(Errc::SpinAssignmentViolation, label + " must carry spin 0 on both arms");
        } else if (c.spin_left != -c.spin_right) {
            throw Error(Errc::SpinAssignmentViolation, label + " arms must carry opposite spins");
        }
        t += c.duration;
        s.stages_[k] = c;
        s.transitions_[k] = t;
    }
    return s;
}

SpinState spin_state_at(const Schedule& schedule, Arm arm, double t) {
    return schedule.stage_at(t).spin(arm);
}

std::vector<double> schedule_grid(const Schedule& schedule, std::size_t samples_per_stage) {
    if (samples_per_stage == 0)
        throw Error(Errc::InvalidArgument, "samples per stage must be positive");
    std::vector<double> grid;
    grid.reserve(kStageCount * samples_per_stage + 1);
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const double t0 = schedule.stage_start(k);
        const double tau = schedule.stage(k).duration;
        for (std::size_t j = 0; j < samples_per_stage; ++j)
            grid.push_back(t0 + tau * static_cast<double>(j) / static_cast<double>(samples_per_stage));
    }
    grid.push_back(schedule.total_time());
    return grid;
}

std::array<StageConfig, kStageCount> table1_stages(bool swap_arms) {
    const SpinState up(swap_arms ? -1 : 1);
    const SpinState zero(0);
    auto linear = [&](double B0, double eta, double dur) {
        return StageConfig{StageKind::Linear, B0, eta, dur, up, -up, 0.0, 521.0};
    };
    auto nonlinear = [&](double B0, double eta, double dur) {
        return StageConfig{StageKind::NonLinear, B0, eta, dur, zero, zero, 0.0, 521.0};
    };
    return {linear(0.001, 5000.0, 0.0044601), nonlinear(0.1, 5.0e6, 0.1099),
            linear(0.001, 5000.0, 0.00112), nonlinear(0.1, 5.0054e6, 0.1099),
            linear(0.001, 4460.0, 0.0046677)};
}

}  // namespace sgi
