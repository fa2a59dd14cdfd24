#include "sgi/contrast.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "sgi/errors.hpp"
#include "sgi/fields.hpp"

namespace sgi {

SpatialContrast spatial_contrast(const PacketParams& left, const PacketParams& right, double width_tol) {
    if (!(left.sigma > 0.0) || !(right.sigma > 0.0))
        throw Error(Errc::InvalidArgument, "packet widths must be positive");
    const double mismatch = std::abs(left.sigma - right.sigma) / left.sigma;
    if (mismatch > width_tol) {
        std::ostringstream os;
        os << "arm widths differ by " << mismatch << " relative";
        throw Error(Errc::WidthMismatch, os.str());
    }
    const double sigma = left.sigma;
    const double dx = right.x_c - left.x_c;
    const double db = right.b - left.b;
    SpatialContrast out;
    out.exponent_dx = dx * dx / (8.0 * sigma * sigma);
    out.exponent_db = 0.5 * sigma * sigma * db * db;
    out.C = std::exp(-out.exponent_dx - out.exponent_db);
    out.phi = 0.5 * db * (right.x_c + left.x_c);
    return out;
}

double script_B(const Schedule& schedule, const ParticleSpec& particle, const SpatialState& arm) {
    const StageConfig& last = schedule.stage(kStageCount - 1);
    const FieldSample B = field_at(last, arm.x, arm.y);
    return B.Bx * particle.beta0 - B.By + particle.d_off * last.eta * std::sin(particle.alpha_prime);
}

double script_B_literal(const Schedule& schedule, const ParticleSpec& particle) {
    const StageConfig& last = schedule.stage(kStageCount - 1);
    return last.B0 * particle.beta0 - particle.y0 + particle.d_off * last.eta * std::sin(particle.alpha_prime);
}

ContrastInputs contrast_inputs(const ParticleSpec& particle, double delta_alpha, double delta_gamma,
                               double script_b, double n_occ) {
    ContrastInputs in;
    in.delta_alpha = delta_alpha;
    in.delta_gamma = delta_gamma;
    in.sigma_p_alpha = particle.sigma_p_alpha;
    in.sigma_p_gamma = particle.sigma_p_gamma;
    in.script_B = script_b;
    in.omega0 = particle.omega0;
    in.inertia = particle.inertia;
    in.n_occ = n_occ;
    in.mu_nv = particle.mu_nv;
    return in;
}

RotationalContrast rotational_contrast(const ContrastInputs& in, const PhysicalConstants& constants) {
    if (!(in.n_occ >= 0.0)) throw Error(Errc::InvalidArgument, "occupation number must be non-negative");
    if (!(in.sigma_p_alpha >= 0.0) || !(in.sigma_p_gamma >= 0.0))
        throw Error(Errc::InvalidArgument, "momentum spreads must be non-negative");
    if (!(in.omega0 > 0.0) || !(in.inertia > 0.0))
        throw Error(Errc::InvalidArgument, "Omega0 and inertia must be positive");
    const double hbar = constants.hbar;
    RotationalContrast out;
    out.term_alpha = in.delta_alpha * in.delta_alpha * in.sigma_p_alpha * in.sigma_p_alpha / (2.0 * hbar * hbar);
    out.term_gamma = in.delta_gamma * in.delta_gamma * in.sigma_p_gamma * in.sigma_p_gamma / (2.0 * hbar * hbar);
    out.term_zero_temperature = 16.0 * in.mu_nv * in.mu_nv * in.script_B * in.script_B /
                                (hbar * in.inertia * in.omega0 * in.omega0 * in.omega0);
    out.term_thermal = (1.0 + 2.0 * in.n_occ) * out.term_zero_temperature;
    out.log_C = -(out.term_alpha + out.term_gamma + out.term_thermal);
    out.C_thermal_bound = std::exp(out.log_C);
    out.C_zero_temperature = std::exp(-(out.term_alpha + out.term_gamma + out.term_zero_temperature));
    return out;
}

double kappa_bound(const ParticleSpec& particle, double B0, const PhysicalConstants& constants) {
    const double I = particle.inertia;
    const double W = particle.omega0;
    return std::sqrt(I * W / (2.0 * constants.hbar)) * 3.0 * particle.mu_nv * B0 * particle.beta0 / (I * W * W);
}

double occupation_number(double temperature, double omega0, const PhysicalConstants& constants) {
    if (!(temperature >= 0.0) || !(omega0 > 0.0))
        throw Error(Errc::InvalidArgument, "temperature must be non-negative and Omega0 positive");
    return constants.kB * temperature / (constants.hbar * omega0);
}

SweepFixed sweep_defaults(const ParticleSpec& particle, const PhysicalConstants& constants) {
    SweepFixed f;
    f.sigma_p = 5.0 * constants.hbar;
    f.beta0 = particle.beta0;
    f.y0 = particle.y0;
    f.alpha_prime = particle.alpha_prime;
    f.mass = particle.m;
    f.radius = particle.radius;
    f.mu_nv = particle.mu_nv;
    return f;
}

double sweep_script_B(const SweepFixed& fixed, double d_off) {
    // B_x = B0 at x = 0 and -B_y = eta y0.
    return fixed.B0 * fixed.beta0 + fixed.eta * fixed.y0 + d_off * fixed.eta * std::sin(fixed.alpha_prime);
}

std::vector<SweepRow> contrast_sweep(const std::vector<double>& omega0_values, const std::vector<double>& d_list,
                                     const std::vector<double>& n_list, const SweepFixed& fixed,
                                     const PhysicalConstants& constants) {
    if (omega0_values.empty() || d_list.empty() || n_list.empty())
        throw Error(Errc::InvalidArgument, "sweep ranges must be non-empty");
    for (double w : omega0_values)
        if (!(w > 0.0) || !std::isfinite(w)) throw Error(Errc::InvalidArgument, "Omega0 values must be positive");
    for (double d : d_list)
        if (!(d >= 0.0)) throw Error(Errc::InvalidArgument, "NV offsets must be non-negative");
    for (double n : n_list)
        if (!(n >= 0.0)) throw Error(Errc::InvalidArgument, "occupation numbers must be non-negative");

    const double inertia = sphere_inertia(fixed.mass, fixed.radius);
    auto row_block = [&](double d, double n) {
        std::vector<SweepRow> block;
        block.reserve(omega0_values.size());
        for (double w : omega0_values) {
            ContrastInputs in;
            in.delta_alpha = fixed.delta_q;
            in.delta_gamma = fixed.delta_q;
            in.sigma_p_alpha = fixed.sigma_p;
            in.sigma_p_gamma = fixed.sigma_p;
            in.script_B = sweep_script_B(fixed, d);
            in.omega0 = w;
            in.inertia = inertia;
            in.n_occ = n;
            in.mu_nv = fixed.mu_nv;
            const RotationalContrast rc = rotational_contrast(in, constants);
            block.push_back({w, d, n, rc.C_thermal_bound, rc.term_alpha, rc.term_gamma, rc.term_thermal});
        }
        return block;
    };

    std::vector<std::future<std::vector<SweepRow>>> jobs;
    for (double d : d_list)
        for (double n : n_list) jobs.push_back(std::async(std::launch::async, row_block, d, n));
    std::vector<SweepRow> rows;
    rows.reserve(jobs.size() * omega0_values.size());
    for (auto& j : jobs) {
        auto block = j.get();
        rows.insert(rows.end(), block.begin(), block.end());
    }
    return rows;
}

std::vector<double> log_space(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi >= lo) || points == 0)
        throw Error(Errc::InvalidArgument, "log_space needs 0 < lo <= hi and at least one point");
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    out.back() = hi;
    return out;
}

}  // namespace sgi
