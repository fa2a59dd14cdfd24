#include "sgi/dynamics.hpp"

#include <array>
#include <cmath>
#include <future>
#include <sstream>

#include "sgi/errors.hpp"

namespace sgi {

namespace {

struct StageTerms {
    StageFrequencies freqs;
    int spin = 0;
    double eta = 0.0;
    double bias_accel = 0.0;  // chi B0 eta / mu0, Linear only
};

std::array<StageTerms, kStageCount> stage_terms(const Schedule& schedule, const ParticleSpec& particle,
                                                Arm arm, const ModelOptions& options) {
    std::array<StageTerms, kStageCount> out;
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& st = schedule.stage(k);
        StageTerms& s = out[k];
        s.freqs = stage_frequencies(st, particle, st.spin(arm), options);
        s.spin = st.spin(arm).value();
        s.eta = st.eta;
        if (st.kind == StageKind::Linear)
            s.bias_accel = particle.chi_rho * st.B0 * st.eta / options.constants.mu0;
    }
    return out;
}

// Rotor rates written in terms of dbeta = beta - beta0 so that the small
// differences cos(beta0) - cos(beta) keep full relative precision.
struct RotorRates {
    double beta_ddot = 0.0;
    double alpha_dot = 0.0;
    double gamma_dot_offset = 0.0;  // gamma_dot - Omega0
};

RotorRates rotor_rates(const ParticleSpec& p, double dbeta, int spin, const StageConfig& stage,
                       double x, double y, double guard, double t) {
    const double beta = p.beta0 + dbeta;
    const double sb = std::sin(beta);
    if (!(std::abs(sb) >= guard)) {
        std::ostringstream os;
        os << "libration angle reached the sin(beta) singularity at t = " << t << " s";
        throw Error(Errc::BetaSingularity, os.str());
    }
    const double cb = std::cos(beta);
    const double diff = 2.0 * std::sin(p.beta0 + 0.5 * dbeta) * std::sin(0.5 * dbeta);  // cos b0 - cos b
    const double W = p.omega0;
    RotorRates r;
    r.beta_ddot = W * W * diff * (std::cos(p.beta0) * cb - 1.0) / (sb * sb * sb);
    if (spin != 0 && stage.kind == StageKind::Linear) {
        const FieldSample B = field_at(stage, x, y);
        r.beta_ddot -= p.mu_nv * spin * nv_field(B, beta, p.d_off, stage.eta, p.alpha_prime) / p.inertia;
    }
    r.alpha_dot = W * diff / (sb * sb);
    r.gamma_dot_offset = -W * cb * diff / (sb * sb);
    return r;
}

}  // namespace

double nv_field(const FieldSample& B, double beta, double d_off, double eta, double alpha_prime) noexcept {
    return -B.By * std::cos(beta) - B.Bx * std::sin(beta) + d_off * eta * std::sin(alpha_prime + 2.0 * beta);
}

RotationalState initial_rotational_state(const ParticleSpec& particle) noexcept {
    RotationalState r;
    r.beta = particle.beta0;
    r.p_alpha = particle.p_alpha();
    r.p_gamma = particle.p_gamma();
    return r;
}

SpatialRhs spatial_rhs(const Schedule& schedule, const ParticleSpec& particle, Arm arm,
                       const ModelOptions& options) {
    const auto terms = stage_terms(schedule, particle, arm, options);
    return [schedule, terms](double t, const SpatialState& s) {
        const StageFrequencies& f = terms[schedule.stage_index(t)].freqs;
        return SpatialDerivative{s.vx, f.omega_x_eff_sq * s.x + f.drive_accel, s.vy, f.omega_y_eff_sq * s.y};
    };
}

RotationalRhs rotational_rhs(const Schedule& schedule, const ParticleSpec& particle, Arm arm,
                             const ModelOptions& options, double guard) {
    (void)options;
    return [schedule, particle, arm, guard](double t, const SpatialState& s, const RotationalState& r) {
        const std::size_t k = schedule.stage_index(t);
        const StageConfig& st = schedule.stage(k);
        const RotorRates rr =
            rotor_rates(particle, r.beta - particle.beta0, st.spin(arm).value(), st, s.x, s.y, guard, t);
        return RotationalDerivative{r.beta_dot, rr.beta_ddot, rr.alpha_dot, particle.omega0 + rr.gamma_dot_offset};
    };
}

namespace {

// State layout: x, vx, y, vy, dbeta, beta_dot, alpha, gamma - Omega0 t.
constexpr std::size_t kDim = 8;

struct ArmRun {
    std::vector<CoupledState> states;
    std::vector<double> dbeta;         // beta - beta0
    std::vector<double> gamma_offset;  // gamma - Omega0 t
    std::size_t rhs_evaluations = 0;
};

ArmRun run_arm(const Schedule& schedule, const ParticleSpec& particle, Arm arm,
               const CoupledOptions& opt, const std::vector<double>& grid,
               const std::vector<std::size_t>& grid_stage) {
    const auto terms = stage_terms(schedule, particle, arm, opt.model);
    const SpatialState s0 = initial_spatial_state(particle);
    std::vector<double> y{s0.x, s0.vx, s0.y, s0.vy, 0.0, 0.0, 0.0, 0.0};
    const std::size_t dim = opt.rotation_on ? kDim : 4;
    y.resize(dim);

    ArmRun out;
    out.states.reserve(grid.size());
    const RotationalState rot0 = initial_rotational_state(particle);
    std::size_t gi = 0;
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& st = schedule.stage(k);
        const StageTerms& term = terms[k];
        const double t0 = schedule.stage_start(k);
        const double t1 = schedule.stage_end(k);

        std::vector<double> samples;
        while (gi < grid.size() && grid_stage[gi] == k) samples.push_back(grid[gi++]);

        ode::Rhs rhs;
        if (opt.rotation_on) {
            rhs = [&](double t, const double* s, double* d) {
                const double beta = particle.beta0 + s[4];
                const double kx = term.freqs.omega_x_eff_sq;
                const double ky = term.freqs.omega_y_eff_sq;
                d[0] = s[1];
                d[2] = s[3];
                if (st.kind == StageKind::Linear) {
                    const double g = term.spin * particle.mu_nv * term.eta / particle.m;
                    d[1] = kx * s[0] + term.bias_accel - g * std::cos(beta);
                    d[3] = ky * s[2] + g * std::sin(beta);
                } else {
                    d[1] = kx * s[0];
                    d[3] = ky * s[2];
                }
                const RotorRates rr = rotor_rates(particle, s[4], term.spin, st, s[0], s[2], opt.beta_guard, t);
                d[4] = s[5];
                d[5] = rr.beta_ddot;
                d[6] = rr.alpha_dot;
                d[7] = rr.gamma_dot_offset;
            };
        } else {
            rhs = [&](double, const double* s, double* d) {
                d[0] = s[1];
                d[1] = term.freqs.omega_x_eff_sq * s[0] + term.freqs.drive_accel;
                d[2] = s[3];
                d[3] = term.freqs.omega_y_eff_sq * s[2];
            };
        }

        ode::Solution sol = ode::integrate(rhs, y, t0, t1, samples, opt.integrator);
        out.rhs_evaluations += sol.rhs_evaluations;
        for (std::size_t i = 0; i < sol.times.size(); ++i) {
            const auto& v = sol.states[i];
            CoupledState cs;
            cs.spatial = {v[0], v[1], v[2], v[3], sol.times[i]};
            if (opt.rotation_on) {
                cs.rotational = rot0;
                cs.rotational.beta = particle.beta0 + v[4];
                cs.rotational.beta_dot = v[5];
                cs.rotational.alpha = v[6];
                cs.rotational.gamma = v[7] + particle.omega0 * sol.times[i];
                out.dbeta.push_back(v[4]);
                out.gamma_offset.push_back(v[7]);
            } else {
                out.dbeta.push_back(0.0);
                out.gamma_offset.push_back(0.0);
                cs.rotational = RotationalState{};
            }
            out.states.push_back(cs);
        }
        y = sol.final_state;
    }
    // The final grid point t5 belongs to the last stage and is emitted there.
    return out;
}

}  // namespace

CoupledRecord simulate_coupled(const Schedule& schedule, const ParticleSpec& particle,
                               const CoupledOptions& options) {
    options.integrator.validate();
    particle.validate();
    CoupledRecord rec;
    rec.rotation_on = options.rotation_on;
    rec.times = schedule_grid(schedule, options.samples_per_stage);
    rec.stage_index.reserve(rec.times.size());
    for (double t : rec.times) rec.stage_index.push_back(schedule.stage_index(t));

    ArmRun left, right;
    if (options.parallel_arms) {
        auto fut = std::async(std::launch::async, [&] {
            return run_arm(schedule, particle, Arm::Right, options, rec.times, rec.stage_index);
        });
        left = run_arm(schedule, particle, Arm::Left, options, rec.times, rec.stage_index);
        right = fut.get();
    } else {
        left = run_arm(schedule, particle, Arm::Left, options, rec.times, rec.stage_index);
        right = run_arm(schedule, particle, Arm::Right, options, rec.times, rec.stage_index);
    }
    rec.rhs_evaluations = left.rhs_evaluations + right.rhs_evaluations;

    const std::size_t n = rec.times.size();
    rec.delta_beta.resize(n);
    rec.delta_alpha.resize(n);
    rec.delta_gamma.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rec.delta_beta[i] = left.dbeta[i] - right.dbeta[i];
        rec.delta_alpha[i] = left.states[i].rotational.alpha - right.states[i].rotational.alpha;
        rec.delta_gamma[i] = left.gamma_offset[i] - right.gamma_offset[i];
    }
    rec.left = std::move(left.states);
    rec.right = std::move(right.states);
    return rec;
}

}  // namespace sgi
