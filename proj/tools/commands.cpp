#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgi/analysis.hpp"
#include "sgi/contrast.hpp"
#include "sgi/dynamics.hpp"
#include "sgi/errors.hpp"
#include "sgi/fields.hpp"
#include "sgi/io.hpp"
#include "sgi/oracle/finite_difference.hpp"
#include "sgi/trajectory.hpp"
#include "sgi/wavepacket.hpp"

namespace sgi::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::set<std::string> selected_outputs(const std::string& spec) {
    static const std::set<std::string> known{"fig2", "fig3", "fig4", "fig5", "fig6", "all"};
    std::set<std::string> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!known.count(item)) throw Error(Errc::ConfigParse, "unknown output selection '" + item + "'");
        out.insert(item);
    }
    if (out.empty()) throw Error(Errc::ConfigParse, "no outputs selected");
    if (out.count("all")) out = {"fig2", "fig3", "fig4", "fig5", "fig6"};
    return out;
}

ModelOptions model_options(const RunManifest& m, const RunConfig& c) {
    ModelOptions o;
    o.constants = c.constants;
    o.trap_on = m.trap_on;
    o.trap_sign = m.trap_sign;
    return o;
}

json options_json(const RunManifest& m) {
    return {{"trap_on", m.trap_on},
            {"rotation_on", m.rotation_on},
            {"trap_sign", to_string(m.trap_sign)},
            {"swap_arms", m.swap_arms},
            {"samples_per_stage", m.samples_per_stage}};
}

json stage_table(const Schedule& s, const ParticleSpec& p, const ModelOptions& o) {
    json arr = json::array();
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& st = s.stage(k);
        const StageFrequencies fl = stage_frequencies(st, p, st.spin_left, o);
        const StageFrequencies fr = stage_frequencies(st, p, st.spin_right, o);
        arr.push_back({{"stage", k + 1},
                       {"kind", to_string(st.kind)},
                       {"start_s", s.stage_start(k)},
                       {"end_s", s.stage_end(k)},
                       {"omega_rad_per_s", fl.omega_stage},
                       {"kappa_nl_rad_per_s_m", fl.kappa_nl},
                       {"omega_x_eff_sq_rad2_per_s2", fl.omega_x_eff_sq},
                       {"omega_y_eff_sq_rad2_per_s2", fl.omega_y_eff_sq},
                       {"A0_left_N", fl.A0},
                       {"A0_right_N", fr.A0}});
    }
    return arr;
}

json packet_json(const PacketParams& p) {
    return {{"sigma_m", p.sigma}, {"x_c_m", p.x_c},       {"a_per_m2", p.a},
            {"b_per_m", p.b},     {"c_rad", p.c},          {"norm_modulus", p.norm_modulus},
            {"norm_phase_rad", p.norm_phase}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double stage1_libration_frequency(const CoupledRecord& rec, const Schedule& s, bool left) {
    std::vector<double> t, v;
    double mean = 0.0;
    const auto& arm = left ? rec.left : rec.right;
    for (std::size_t i = 0; i < rec.times.size(); ++i)
        if (rec.stage_index[i] == 0) {
            t.push_back(rec.times[i]);
            v.push_back(arm[i].rotational.beta);
            mean += arm[i].rotational.beta;
        }
    if (t.empty()) return 0.0;
    mean /= static_cast<double>(t.size());
    for (double& x : v) x -= mean;
    (void)s;
    return zero_crossing_frequency(t, v);
}

}  // namespace

RunConfig resolve_config(const RunManifest& m) {
    RunConfig c;
    if (m.config) {
        c = load_config(*m.config);
    } else if (m.preset == "table1") {
        c = table1_preset(false);
    } else {
        throw Error(Errc::ConfigParse, "unknown preset '" + m.preset + "'");
    }
    if (m.swap_arms) swap_arm_spins(c.stages);
    if (m.samples_per_stage < 100) throw Error(Errc::ConfigParse, "samples per stage must be at least 100");
    return c;
}

void cmd_run(const RunManifest& m, std::ostream& log) {
    const RunConfig cfg = resolve_config(m);
    const auto outputs = selected_outputs(m.outputs);
    const Schedule sched = cfg.schedule();
    const ParticleSpec& p = cfg.particle;
    const ModelOptions opts = model_options(m, cfg);
    ensure_directory(m.out);
    json files = json::array();
    json notes = json::array();
    const std::size_t n = m.samples_per_stage;

    const TrajectoryRecord traj = run_interferometer(sched, p, opts, n);
    if (outputs.count("fig2")) {
        CsvTable t({"t_s", "xL_m", "vxL_m_per_s", "yL_m", "vyL_m_per_s", "xR_m", "vxR_m_per_s", "yR_m",
                    "vyR_m_per_s", "dx_m", "dv_m_per_s"});
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto& l = traj.left[i];
            const auto& r = traj.right[i];
            t.add_row({traj.times[i], l.x, l.vx, l.y, l.vy, r.x, r.vx, r.y, r.vy, traj.delta_x[i], traj.delta_v[i]});
        }
        write_text_file(m.out / "fig2.csv", t.str());
        files.push_back("fig2.csv");
    }
    if (outputs.count("fig3")) {
        ModelOptions with = opts, without = opts;
        with.trap_on = true;
        without.trap_on = false;
        const TrajectoryRecord a = run_interferometer(sched, p, with, n);
        const TrajectoryRecord b = run_interferometer(sched, p, without, n);
        CsvTable t({"t_s", "yL_trap_m", "yR_trap_m", "yL_notrap_m", "yR_notrap_m"});
        for (std::size_t i = 0; i < a.times.size(); ++i)
            t.add_row({a.times[i], a.left[i].y, a.right[i].y, b.left[i].y, b.right[i].y});
        write_text_file(m.out / "fig3.csv", t.str());
        files.push_back("fig3.csv");
    }

    CoupledOptions co;
    co.rotation_on = m.rotation_on;
    co.model = opts;
    co.samples_per_stage = n;
    const CoupledRecord coupled = simulate_coupled(sched, p, co);
    {
        CsvTable t({"t_s", "xL_m", "yL_m", "betaL_rad", "alphaL_rad", "gammaL_rad", "xR_m", "yR_m", "betaR_rad",
                    "alphaR_rad", "gammaR_rad", "dbeta_rad", "dalpha_rad", "dgamma_rad"});
        for (std::size_t i = 0; i < coupled.times.size(); ++i) {
            const auto& l = coupled.left[i];
            const auto& r = coupled.right[i];
            t.add_row({coupled.times[i], l.spatial.x, l.spatial.y, l.rotational.beta, l.rotational.alpha,
                       l.rotational.gamma, r.spatial.x, r.spatial.y, r.rotational.beta, r.rotational.alpha,
                       r.rotational.gamma, coupled.delta_beta[i], coupled.delta_alpha[i], coupled.delta_gamma[i]});
        }
        write_text_file(m.out / "coupled.csv", t.str());
        files.push_back("coupled.csv");
    }

    const bool want_rot = outputs.count("fig4") || outputs.count("fig5");
    if (want_rot && !m.rotation_on) {
        notes.push_back("fig4.csv and fig5.csv omitted: rotation is off");
    } else if (want_rot) {
        CoupledOptions off = co, on = co;
        off.model.trap_on = false;
        on.model.trap_on = true;
        const CoupledRecord& ron = m.trap_on ? coupled : simulate_coupled(sched, p, on);
        const CoupledRecord roff = m.trap_on ? simulate_coupled(sched, p, off) : coupled;
        if (outputs.count("fig4")) {
            CsvTable t({"t_s", "betaL_notrap_rad", "betaR_notrap_rad", "betaL_trap_rad", "betaR_trap_rad"});
            for (std::size_t i = 0; i < ron.times.size(); ++i)
                t.add_row({ron.times[i], roff.left[i].rotational.beta, roff.right[i].rotational.beta,
                           ron.left[i].rotational.beta, ron.right[i].rotational.beta});
            write_text_file(m.out / "fig4.csv", t.str());
            files.push_back("fig4.csv");
        }
        if (outputs.count("fig5")) {
            CsvTable t({"t_s", "dalpha_notrap_rad", "dgamma_notrap_rad", "dalpha_trap_rad", "dgamma_trap_rad"});
            for (std::size_t i = 0; i < ron.times.size(); ++i)
                t.add_row({ron.times[i], roff.delta_alpha[i], roff.delta_gamma[i], ron.delta_alpha[i],
                           ron.delta_gamma[i]});
            write_text_file(m.out / "fig5.csv", t.str());
            files.push_back("fig5.csv");
        }
    }

    const PacketRecord packets = propagate_packet(sched, p, opts, n);
    {
        CsvTable t({"t_s", "sigmaL_m", "xcL_m", "aL_per_m2", "bL_per_m", "sigmaR_m", "xcR_m", "aR_per_m2",
                    "bR_per_m"});
        for (std::size_t i = 0; i < packets.times.size(); ++i) {
            const auto& l = packets.left[i];
            const auto& r = packets.right[i];
            t.add_row({packets.times[i], l.sigma, l.x_c, l.a, l.b, r.sigma, r.x_c, r.a, r.b});
        }
        write_text_file(m.out / "packet.csv", t.str());
        files.push_back("packet.csv");
        json pj = json::array();
        for (std::size_t i = 0; i < packets.times.size(); ++i) {
            const bool boundary = i == 0 || i + 1 == packets.times.size() ||
                                  packets.stage_index[i] != packets.stage_index[i - 1];
            if (!boundary) continue;
            pj.push_back({{"t_s", packets.times[i]},
                          {"stage", packets.stage_index[i] + 1},
                          {"left", packet_json(packets.left[i])},
                          {"right", packet_json(packets.right[i])}});
        }
        write_text_file(m.out / "packet.json", dump(pj));
        files.push_back("packet.json");
    }

    // Contrast at t5.
    const PacketParams& pl = packets.left.back();
    const PacketParams& pr = packets.right.back();
    const SpatialContrast sc = spatial_contrast(pl, pr);
    const SpatialState sl = coupled.left.back().spatial;
    const SpatialState sr = coupled.right.back().spatial;
    const double bl = script_B(sched, p, sl);
    const double br = script_B(sched, p, sr);
    const double sb = 0.5 * (bl + br);
    const double da = coupled.delta_alpha.back();
    const double dg = coupled.delta_gamma.back();
    const RotationalContrast rc = rotational_contrast(contrast_inputs(p, da, dg, sb, cfg.contrast.n_occ), cfg.constants);
    if (!m.rotation_on) notes.push_back("rotation off: delta_alpha and delta_gamma are zero in the contrast");

    const auto sep = separation_at_boundaries(sched, p, opts);
    const double dx_full = max_separation_full(sched, p, opts);
    json validity = json::array();
    for (std::size_t k : {std::size_t{1}, std::size_t{3}}) {
        const NonlinearValidity v = check_nonlinear_validity(sched.stage(k), p, dx_full, 0.01, cfg.constants);
        validity.push_back({{"stage", k + 1}, {"x_extent_m", dx_full}, {"ratio", v.ratio}, {"valid", v.valid}});
    }
    json lib = nullptr;
    if (m.rotation_on)
        lib = {{"omega0_rad_per_s", p.omega0},
               {"stage1_left_rad_per_s", stage1_libration_frequency(coupled, sched, true)},
               {"stage1_right_rad_per_s", stage1_libration_frequency(coupled, sched, false)}};

    std::vector<double> transitions(sched.transitions().begin(), sched.transitions().end());
    json summary = {
        {"config_hash", config_hash(cfg)},
        {"source", m.config ? m.config->string() : "preset:" + m.preset},
        {"options", options_json(m)},
        {"transitions_s", transitions},
        {"stages", stage_table(sched, p, opts)},
        {"sigma0_m", p.sigma0},
        {"dx_max_m", max_superposition(sched, p, opts)},
        {"dx_max_full_loop_m", dx_full},
        {"dx_max_velocity_free_m", velocity_free_superposition(sched, p, opts)},
        {"closure", {{"dx_t5_m", sep.back().dx}, {"dv_t5_m_per_s", sep.back().dv}}},
        {"nonlinear_validity", validity},
        {"libration", lib},
        {"contrast",
         {{"spatial", {{"C", sc.C}, {"phi_rad", sc.phi}, {"exponent_dx", sc.exponent_dx}, {"exponent_db", sc.exponent_db}}},
          {"rotational",
           {{"C_thermal_bound", rc.C_thermal_bound},
            {"C_zero_temperature", rc.C_zero_temperature},
            {"term_alpha", rc.term_alpha},
            {"term_gamma", rc.term_gamma},
            {"term_thermal", rc.term_thermal},
            {"term_zero_temperature", rc.term_zero_temperature},
            {"log_C", rc.log_C}}},
          {"n_occ", cfg.contrast.n_occ},
          {"delta_alpha_rad", da},
          {"delta_gamma_rad", dg},
          {"script_B_T", sb},
          {"script_B_left_T", bl},
          {"script_B_right_T", br},
          {"script_B_literal", script_B_literal(sched, p)},
          {"kappa_bound", kappa_bound(p, sched.stage(kStageCount - 1).B0, cfg.constants)}}},
        {"outputs", files},
        {"notes", notes},
    };
    if (outputs.count("fig6")) summary["notes"].push_back("fig6 data is produced by the sweep command");
    write_text_file(m.out / "summary.json", dump(summary));
    log << "wrote " << files.size() + 1 << " files to " << m.out.string() << "\n";
}

void cmd_sweep(const RunManifest& m, const SweepSpec& s, std::ostream& log) {
    const RunConfig cfg = resolve_config(m);
    const ContrastSettings& cs = cfg.contrast;
    const double lo = s.omega_min.value_or(cs.sweep_omega_min);
    const double hi = s.omega_max.value_or(cs.sweep_omega_max);
    const long long pts = s.points.value_or(static_cast<long long>(cs.sweep_points));
    if (pts <= 0) throw Error(Errc::ConfigParse, "sweep needs at least one Omega0 point");
    if (!(lo > 0.0) || !(hi >= lo)) throw Error(Errc::ConfigParse, "sweep needs 0 < omega-min <= omega-max");
    const auto d_list = s.d_list.value_or(cs.sweep_d_list);
    const auto n_list = s.n_list.value_or(cs.sweep_n_list);
    if (d_list.empty() || n_list.empty()) throw Error(Errc::ConfigParse, "sweep lists must be non-empty");

    const std::vector<double> omegas = log_space(lo, hi, static_cast<std::size_t>(pts));
    SweepFixed fixed = sweep_defaults(cfg.particle, cfg.constants);
    fixed.delta_q = cs.delta_q;
    fixed.B0 = cfg.stages[kStageCount - 1].B0;
    fixed.eta = cfg.stages[kStageCount - 1].eta;
    ensure_directory(m.out);
    auto emit = [&](const std::string& name, const std::vector<SweepRow>& rows) {
        CsvTable t({"Omega0_rad_per_s", "d_m", "n", "C", "term1", "term2", "term3"});
        for (const auto& r : rows) t.add_row({r.omega0, r.d, r.n, r.C, r.term1, r.term2, r.term3});
        write_text_file(m.out / name, t.str());
    };
    emit("fig6a.csv", contrast_sweep(omegas, d_list, {cs.sweep_n}, fixed, cfg.constants));
    emit("fig6b.csv", contrast_sweep(omegas, {cs.sweep_d}, n_list, fixed, cfg.constants));
    log << "wrote fig6a.csv and fig6b.csv to " << m.out.string() << "\n";
}

void cmd_tune(const RunManifest& m, std::ostream& log) {
    const RunConfig cfg = resolve_config(m);
    const Schedule sched = cfg.schedule();
    const ModelOptions opts = model_options(m, cfg);
    const TuneResult res = try_tune_closure(sched, cfg.particle, opts);
    ensure_directory(m.out);

    json params = json::array();
    for (std::size_t k = 0; k < kStageCount; ++k)
        params.push_back({{"stage", k + 1},
                          {"eta_seed", sched.stage(k).eta},
                          {"eta_tuned", res.schedule.stage(k).eta},
                          {"duration_seed_s", sched.stage(k).duration},
                          {"duration_tuned_s", res.schedule.stage(k).duration}});
    const json report = {{"converged", res.converged},
                         {"iterations", res.iterations},
                         {"residual_dx_m", res.residual_dx},
                         {"residual_dv_m_per_s", res.residual_dv},
                         {"tolerance_dx_m", TuneOptions{}.tol_dx},
                         {"tolerance_dv_m_per_s", TuneOptions{}.tol_dv},
                         {"residual_history", res.residual_history},
                         {"stages", params},
                         {"dx_max_full_loop_m", max_separation_full(res.schedule, cfg.particle, opts)},
                         {"config_hash_seed", config_hash(cfg)}};
    write_text_file(m.out / "tune_report.json", dump(report));
    if (!res.converged) {
        std::ostringstream os;
        os << "closure tuner stopped after " << res.iterations << " iterations; best residuals dx = "
           << res.residual_dx << " m, dv = " << res.residual_dv << " m/s";
        throw Error(Errc::NoConvergence, os.str());
    }
    RunConfig tuned = cfg;
    tuned.stages = res.schedule.stages();
    if (m.swap_arms) swap_arm_spins(tuned.stages);
    write_text_file(m.out / "tuned.ini", serialize_config(tuned));
    log << "converged in " << res.iterations << " iterations: dx = " << res.residual_dx
        << " m, dv = " << res.residual_dv << " m/s\n";
}

void cmd_validate(const RunManifest& m, std::ostream& out) {
    const RunConfig cfg = resolve_config(m);
    const Schedule sched = cfg.schedule();
    const ParticleSpec& p = cfg.particle;
    const ModelOptions opts = model_options(m, cfg);
    json maxwell = json::array();
    bool ok = true;
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const oracle::MaxwellReport r = oracle::maxwell_grid(sched.stage(k), 2.0e-5, 100, 1.0e-9);
        const bool pass = r.max_relative_divergence < 1.0e-8 && r.max_relative_curl < 1.0e-8;
        ok = ok && pass;
        maxwell.push_back({{"stage", k + 1},
                           {"max_relative_divergence", r.max_relative_divergence},
                           {"max_relative_curl", r.max_relative_curl},
                           {"pass", pass}});
    }
    const double w1 = stage_omega(sched.stage(0), p.chi_rho, cfg.constants.mu0);
    const double quarter = std::numbers::pi / (2.0 * w1);
    const double t1 = sched.stage_end(0);
    const json report = {{"config_hash", config_hash(cfg)},
                         {"config", "ok"},
                         {"stages", stage_table(sched, p, opts)},
                         {"maxwell", maxwell},
                         {"quarter_period_stage1_s", quarter},
                         {"t1_s", t1},
                         {"quarter_period_relative_offset", std::abs(quarter - t1) / t1},
                         {"maxwell_pass", ok}};
    out << dump(report);
    if (!ok) throw Error(Errc::NonFiniteDerivative, "field profile fails the Maxwell check");
}

int exit_code_for(const std::exception& e) noexcept {
    if (const auto* se = dynamic_cast<const Error*>(&e)) {
        switch (se->error_class()) {
            case ErrorClass::Config: return kConfigError;
            case ErrorClass::Numerical: return kNumericalError;
            case ErrorClass::NoConvergence: return kNoConvergence;
        }
    }
    return kNumericalError;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Five-stage Stern-Gerlach interferometer simulator", "sgi"};
    app.require_subcommand(1);
    RunManifest m;
    SweepSpec sweep;
    std::string trap_sign = "as-written";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--preset", m.preset, "built-in parameter set")->check(CLI::IsMember({"table1"}));
        sub->add_option("--config", m.config, "INI configuration file");
        sub->add_option("--out", m.out, "output directory");
        sub->add_option("--samples-per-stage,--samples_per_stage", m.samples_per_stage, "grid points per stage");
        sub->add_flag("--trap_on,--trap-on,!--no-trap", m.trap_on, "harmonic trap terms on");
        sub->add_flag("--rotation_on,--rotation-on,!--no-rotation", m.rotation_on, "rotational dynamics on");
        sub->add_option("--trap-sign,--trap_sign", trap_sign, "as-written or conventional")
            ->check(CLI::IsMember({"as-written", "conventional"}));
        sub->add_flag("--swap-arms,--swap_arms", m.swap_arms, "Left arm carries s = -1");
        sub->add_flag("--seedless", m.seedless, "reserved; no random numbers are used");
    };
    auto* run = app.add_subcommand("run", "simulate and write figure data");
    common(run);
    run->add_option("--outputs", m.outputs, "fig2,fig3,fig4,fig5,fig6 or all");
    auto* sw = app.add_subcommand("sweep", "thermal contrast against Omega0");
    common(sw);
    sw->add_option("--omega-min,--omega_min", sweep.omega_min, "rad/s");
    sw->add_option("--omega-max,--omega_max", sweep.omega_max, "rad/s");
    sw->add_option("--points", sweep.points, "number of Omega0 values");
    sw->add_option("--d-list,--d_list", sweep.d_list, "NV offsets in m")->delimiter(',');
    sw->add_option("--n-list,--n_list", sweep.n_list, "occupation numbers")->delimiter(',');
    auto* tune = app.add_subcommand("tune", "close the loop at t5");
    common(tune);
    auto* val = app.add_subcommand("validate", "config lint, Maxwell and frequency checks");
    common(val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }
    m.trap_sign = trap_sign == "conventional" ? TrapSign::Conventional : TrapSign::AsWritten;

    try {
        if (*run) cmd_run(m, out);
        else if (*sw) cmd_sweep(m, sweep, out);
        else if (*tune) cmd_tune(m, out);
        else if (*val) cmd_validate(m, out);
        return kOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace sgi::cli
