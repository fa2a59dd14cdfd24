#include "sgi/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sgi/errors.hpp"
#include "sgi/quadratic.hpp"

namespace sgi {

namespace {

struct RelativeChannel {
    double k = 0.0;
    double force = 0.0;
};

RelativeChannel relative_channel(const StageConfig& stage, const ParticleSpec& particle,
                                 const ModelOptions& options) {
    const StageFrequencies f = stage_frequencies(stage, particle, stage.spin_left, options);
    if (stage.kind != StageKind::Linear) return {f.omega_x_eff_sq, 0.0};
    // The bias terms are identical on both arms and cancel; only the spin drive survives.
    const double dA0 = (stage.spin_right.value() - stage.spin_left.value()) * particle.mu_nv * stage.eta;
    return {f.omega_x_eff_sq, -dA0 / particle.m};
}

// max |q| over [0, tau] for q'' = k q + f, checking the endpoints and every
// turning point inside the interval.
double max_abs_on_interval(double k, double f, PhasePoint p0, double tau) {
    auto q_at = [&](double t) { return flow_point(quadratic_flow(k, t), k, f, p0).q; };
    double best = std::max(std::abs(p0.q), std::abs(q_at(tau)));
    auto consider = [&](double t) {
        if (t > 0.0 && t < tau) best = std::max(best, std::abs(q_at(t)));
    };
    if (std::abs(k) * tau * tau < 1.0e-12) {
        if (f != 0.0) consider(-p0.v / f);
        return best;
    }
    const double w = std::sqrt(std::abs(k));
    if (k < 0.0) {
        // v(t) = A sin(wt) + B cos(wt)
        const double A = f / w - w * p0.q;
        const double B = p0.v;
        if (A == 0.0 && B == 0.0) return best;
        double th = std::atan2(-B, A);
        while (th < 0.0) th += std::numbers::pi;
        for (; th < w * tau; th += std::numbers::pi) consider(th / w);
    } else {
        // v(t) = A sinh(wt) + B cosh(wt)
        const double A = w * p0.q + f / w;
        const double B = p0.v;
        if (A != 0.0) {
            const double r = -B / A;
            if (std::abs(r) < 1.0) consider(std::atanh(r) / w);
        }
    }
    return best;
}

std::vector<PhasePoint> relative_boundaries(const Schedule& schedule, const ParticleSpec& particle,
                                            const ModelOptions& options) {
    std::vector<PhasePoint> out{PhasePoint{}};
    for (const StageConfig& st : schedule.stages()) {
        const RelativeChannel ch = relative_channel(st, particle, options);
        out.push_back(flow_point(quadratic_flow(ch.k, st.duration), ch.k, ch.force, out.back()));
    }
    return out;
}

}  // namespace

SpatialState initial_spatial_state(const ParticleSpec& particle) noexcept {
    SpatialState s;
    s.y = particle.y0;
    return s;
}

SpatialState propagate_stage(const SpatialState& state, const StageFrequencies& freqs, double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw Error(Errc::InvalidArgument, "propagation time must be non-negative");
    const PhasePoint px = flow_point(quadratic_flow(freqs.omega_x_eff_sq, tau), freqs.omega_x_eff_sq,
                                     freqs.drive_accel, {state.x, state.vx});
    const PhasePoint py = flow_point(quadratic_flow(freqs.omega_y_eff_sq, tau), freqs.omega_y_eff_sq,
                                     0.0, {state.y, state.vy});
    return {px.q, px.v, py.q, py.v, state.t + tau};
}

std::vector<SpatialState> stage_boundary_states(const Schedule& schedule,
                                                const ParticleSpec& particle, Arm arm,
                                                const ModelOptions& options) {
    std::vector<SpatialState> out{initial_spatial_state(particle)};
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& st = schedule.stage(k);
        const StageFrequencies f = stage_frequencies(st, particle, st.spin(arm), options);
        SpatialState next = propagate_stage(out.back(), f, st.duration);
        next.t = schedule.stage_end(k);
        out.push_back(next);
    }
    return out;
}

std::vector<Separation> separation_at_boundaries(const Schedule& schedule,
                                                 const ParticleSpec& particle,
                                                 const ModelOptions& options) {
    std::vector<Separation> out;
    for (const PhasePoint& p : relative_boundaries(schedule, particle, options)) out.push_back({p.q, p.v});
    return out;
}

Separation separation_at(const Schedule& schedule, const ParticleSpec& particle, double t,
                         const ModelOptions& options) {
    const std::size_t k = schedule.stage_index(t);
    const auto b = relative_boundaries(schedule, particle, options);
    const RelativeChannel ch = relative_channel(schedule.stage(k), particle, options);
    const PhasePoint p = flow_point(quadratic_flow(ch.k, t - schedule.stage_start(k)), ch.k, ch.force, b[k]);
    return {p.q, p.v};
}

TrajectoryRecord run_interferometer(const Schedule& schedule, const ParticleSpec& particle,
                                    const ModelOptions& options, std::size_t samples_per_stage) {
    const auto left_b = stage_boundary_states(schedule, particle, Arm::Left, options);
    const auto right_b = stage_boundary_states(schedule, particle, Arm::Right, options);
    const auto rel_b = relative_boundaries(schedule, particle, options);

    std::array<StageFrequencies, kStageCount> fl, fr;
    std::array<RelativeChannel, kStageCount> rel;
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& st = schedule.stage(k);
        fl[k] = stage_frequencies(st, particle, st.spin_left, options);
        fr[k] = stage_frequencies(st, particle, st.spin_right, options);
        rel[k] = relative_channel(st, particle, options);
    }

    TrajectoryRecord rec;
    rec.times = schedule_grid(schedule, samples_per_stage);
    const std::size_t n = rec.times.size();
    rec.stage_index.reserve(n);
    rec.left.reserve(n);
    rec.right.reserve(n);
    rec.delta_x.reserve(n);
    rec.delta_v.reserve(n);
    for (double t : rec.times) {
        const std::size_t k = schedule.stage_index(t);
        const double tau = t - schedule.stage_start(k);
        SpatialState l = propagate_stage(left_b[k], fl[k], tau);
        SpatialState r = propagate_stage(right_b[k], fr[k], tau);
        l.t = t;
        r.t = t;
        const PhasePoint d = flow_point(quadratic_flow(rel[k].k, tau), rel[k].k, rel[k].force, rel_b[k]);
        rec.stage_index.push_back(k);
        rec.left.push_back(l);
        rec.right.push_back(r);
        rec.delta_x.push_back(d.q);
        rec.delta_v.push_back(d.v);
    }
    return rec;
}

double max_superposition(const Schedule& schedule, const ParticleSpec& particle,
                         const ModelOptions& options) {
    const auto b = relative_boundaries(schedule, particle, options);
    const StageConfig& st = schedule.stage(2);
    const RelativeChannel ch = relative_channel(st, particle, options);
    return max_abs_on_interval(ch.k, ch.force, b[2], st.duration);
}

double max_separation_full(const Schedule& schedule, const ParticleSpec& particle,
                           const ModelOptions& options) {
    const auto b = relative_boundaries(schedule, particle, options);
    double best = 0.0;
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& st = schedule.stage(k);
        const RelativeChannel ch = relative_channel(st, particle, options);
        best = std::max(best, max_abs_on_interval(ch.k, ch.force, b[k], st.duration));
    }
    return best;
}

double velocity_free_superposition(const Schedule& schedule, const ParticleSpec& particle,
                                   const ModelOptions& options) {
    const double mu0 = options.constants.mu0;
    const StageConfig& s1 = schedule.stage(0);
    const StageConfig& s2 = schedule.stage(1);
    const double wl = stage_omega(s1, particle.chi_rho, mu0);
    const double wnl = stage_omega(s2, particle.chi_rho, mu0);
    const double th = wnl * s2.duration;
    const double ch = std::cosh(th);
    const double sh = std::sinh(th);
    return 4.0 * particle.mu_nv * s1.eta / (particle.m * wl * wl) *
           std::sqrt(ch * ch + (wnl / wl) * (wnl / wl) * sh * sh);
}

namespace {

struct TuneProblem {
    const Schedule& seed;
    const ParticleSpec& particle;
    const ModelOptions& options;
    const TuneOptions& tune;

    std::size_t dim() const { return tune.include_stage4_gradient ? 3 : 2; }

    std::vector<double> lower() const {
        std::vector<double> lo;
        if (tune.include_stage4_gradient) lo.push_back(-tune.stage4_eta_range);
        lo.push_back(tune.stage5_eta_min - 1.0);
        lo.push_back(tune.stage5_duration_min - 1.0);
        return lo;
    }
    std::vector<double> upper() const {
        std::vector<double> hi;
        if (tune.include_stage4_gradient) hi.push_back(tune.stage4_eta_range);
        hi.push_back(tune.stage5_eta_max - 1.0);
        hi.push_back(tune.stage5_duration_max - 1.0);
        return hi;
    }

    // q holds relative offsets from the seed values.
    Schedule apply(const std::vector<double>& q) const {
        auto stages = seed.stages();
        std::size_t i = 0;
        if (tune.include_stage4_gradient) stages[3].eta = seed.stage(3).eta * (1.0 + q[i++]);
        stages[4].eta = seed.stage(4).eta * (1.0 + q[i++]);
        stages[4].duration = seed.stage(4).duration * (1.0 + q[i++]);
        return build_schedule(stages);
    }

    // Residuals in units of the tolerances.
    std::array<double, 2> residual(const Schedule& s) const {
        const auto b = separation_at_boundaries(s, particle, options);
        return {b.back().dx / tune.tol_dx, b.back().dv / tune.tol_dv};
    }
};

double norm2(const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); }

bool finite2(const std::array<double, 2>& r) { return std::isfinite(r[0]) && std::isfinite(r[1]); }

}  // namespace

TuneResult try_tune_closure(const Schedule& schedule, const ParticleSpec& particle,
                            const ModelOptions& options, const TuneOptions& tune) {
    if (!(tune.tol_dx > 0.0 && tune.tol_dv > 0.0))
        throw Error(Errc::InvalidArgument, "closure tolerances must be positive");
    const TuneProblem prob{schedule, particle, options, tune};
    const std::size_t n = prob.dim();
    const auto lo = prob.lower();
    const auto hi = prob.upper();

    std::vector<double> q(n, 0.0);
    TuneResult best{schedule, 0.0, 0.0, 0, false, {}};
    std::array<double, 2> r = prob.residual(schedule);
    auto record = [&](const Schedule& s, const std::array<double, 2>& res) {
        best.schedule = s;
        best.residual_dx = res[0] * tune.tol_dx;
        best.residual_dv = res[1] * tune.tol_dv;
        best.converged = std::abs(res[0]) < 1.0 && std::abs(res[1]) < 1.0;
    };
    record(schedule, r);
    best.residual_history.push_back(norm2(r));
    if (best.converged || !finite2(r)) return best;

    for (std::size_t it = 0; it < tune.max_iterations; ++it) {
        // Central-difference Jacobian, 2 x n.
        std::vector<std::array<double, 2>> J(n);
        bool jac_ok = true;
        for (std::size_t j = 0; j < n; ++j) {
            const double h = 1.0e-6;
            auto qp = q, qm = q;
            qp[j] += h;
            qm[j] -= h;
            const auto rp = prob.residual(prob.apply(qp));
            const auto rm = prob.residual(prob.apply(qm));
            J[j] = {(rp[0] - rm[0]) / (2.0 * h), (rp[1] - rm[1]) / (2.0 * h)};
            jac_ok = jac_ok && finite2(J[j]);
        }
        if (!jac_ok) break;

        // Minimum-norm Newton step: dq = -J^T (J J^T)^{-1} r.
        double a = 0.0, b = 0.0, d = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            a += J[j][0] * J[j][0];
            b += J[j][0] * J[j][1];
            d += J[j][1] * J[j][1];
        }
        const double det = a * d - b * b;
        if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
        const double y0 = (d * r[0] - b * r[1]) / det;
        const double y1 = (-b * r[0] + a * r[1]) / det;
        std::vector<double> dq(n);
        for (std::size_t j = 0; j < n; ++j) dq[j] = -(J[j][0] * y0 + J[j][1] * y1);

        bool accepted = false;
        double lambda = 1.0;
        for (int ls = 0; ls < 40; ++ls, lambda *= 0.5) {
            auto qt = q;
            for (std::size_t j = 0; j < n; ++j) qt[j] = std::clamp(q[j] + lambda * dq[j], lo[j], hi[j]);
            const Schedule st = prob.apply(qt);
            const auto rt = prob.residual(st);
            if (finite2(rt) && norm2(rt) < norm2(r)) {
                q = qt;
                r = rt;
                record(st, rt);
                accepted = true;
                break;
            }
        }
        best.iterations = it + 1;
        best.residual_history.push_back(norm2(r));
        if (!accepted || best.converged) break;
    }
    return best;
}

TuneResult tune_closure(const Schedule& schedule, const ParticleSpec& particle,
                        const ModelOptions& options, const TuneOptions& tune) {
    TuneResult res = try_tune_closure(schedule, particle, options, tune);
    if (!res.converged) {
        std::ostringstream os;
        os << "closure tuner stopped after " << res.iterations
           << " iterations; best residuals dx = " << res.residual_dx << " m, dv = " << res.residual_dv
           << " m/s";
        throw Error(Errc::NoConvergence, os.str());
    }
    return res;
}

}  // namespace sgi
