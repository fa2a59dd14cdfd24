#include "sgi/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sgi/errors.hpp"
#include "sgi/fields.hpp"

namespace sgi {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::ConfigParse, what); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (v.empty()) parse_fail(key + ": empty value");
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d))
        parse_fail(key + ": not a finite number: '" + v + "'");
    return d;
}

int to_int(const std::string& key, const std::string& raw) {
    const double d = to_double(key, raw);
    if (d != std::floor(d) || std::abs(d) > 1.0e9) parse_fail(key + ": expected an integer");
    return static_cast<int>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
    if (out.empty()) parse_fail(key + ": empty list");
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s;
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;

void apply_section(const pt::ptree& section, const std::string& name, const std::map<std::string, Setter>& setters) {
    for (const auto& [key, node] : section) {
        if (!node.empty()) parse_fail("[" + name + "] " + key + ": nested values are not allowed");
        const auto it = setters.find(key);
        if (it == setters.end()) parse_fail("[" + name + "] unknown key '" + key + "'");
        it->second(name + "." + key, node.data());
    }
}

}  // namespace

Schedule RunConfig::schedule() const { return build_schedule(stages); }

void swap_arm_spins(std::array<StageConfig, kStageCount>& stages) {
    for (auto& st : stages) std::swap(st.spin_left, st.spin_right);
}

RunConfig table1_preset(bool swap_arms) {
    RunConfig c;
    c.particle = nanodiamond(c.constants);
    c.stages = table1_stages(swap_arms);
    c.particle.sigma0 = ground_state_width(c.stages[0], c.particle, c.constants);
    return c;
}

RunConfig parse_config(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        parse_fail(std::string("malformed INI: ") + e.message() + " at line " + std::to_string(e.line()));
    }

    RunConfig c = table1_preset(false);
    ParticleSpec& p = c.particle;
    bool inertia_given = false;
    bool sigma0_given = false;

    auto num = [](double& target) -> Setter {
        return [&target](const std::string& k, const std::string& v) { target = to_double(k, v); };
    };

    std::map<std::string, Setter> particle_keys{
        {"mass", num(p.m)},
        {"chi_rho", num(p.chi_rho)},
        {"mu_nv", num(p.mu_nv)},
        {"d_zfs", num(p.d_zfs)},
        {"radius", num(p.radius)},
        {"inertia", [&](const std::string& k, const std::string& v) { p.inertia = to_double(k, v); inertia_given = true; }},
        {"d_off", num(p.d_off)},
        {"alpha_prime", num(p.alpha_prime)},
        {"sigma0", [&](const std::string& k, const std::string& v) { p.sigma0 = to_double(k, v); sigma0_given = true; }},
        {"y0", num(p.y0)},
    };
    std::map<std::string, Setter> rotation_keys{
        {"beta0", num(p.beta0)},
        {"beta0_deg", [&](const std::string& k, const std::string& v) { p.beta0 = degrees_to_radians(to_double(k, v)); }},
        {"omega0", num(p.omega0)},
        {"sigma_p_alpha", num(p.sigma_p_alpha)},
        {"sigma_p_gamma", num(p.sigma_p_gamma)},
    };
    ContrastSettings& cs = c.contrast;
    std::map<std::string, Setter> contrast_keys{
        {"n_occ", num(cs.n_occ)},
        {"sweep_omega_min", num(cs.sweep_omega_min)},
        {"sweep_omega_max", num(cs.sweep_omega_max)},
        {"sweep_points", [&](const std::string& k, const std::string& v) {
             const int n = to_int(k, v);
             if (n < 1) parse_fail(k + ": must be at least 1");
             cs.sweep_points = static_cast<std::size_t>(n);
         }},
        {"sweep_d_list", [&](const std::string& k, const std::string& v) { cs.sweep_d_list = to_list(k, v); }},
        {"sweep_n_list", [&](const std::string& k, const std::string& v) { cs.sweep_n_list = to_list(k, v); }},
        {"sweep_n", num(cs.sweep_n)},
        {"sweep_d", num(cs.sweep_d)},
        {"delta_q", num(cs.delta_q)},
    };

    for (const auto& [name, section] : tree) {
        if (section.empty() && !section.data().empty())
            parse_fail("key '" + name + "' outside any section");
        if (name == "particle") {
            apply_section(section, name, particle_keys);
        } else if (name == "rotation") {
            apply_section(section, name, rotation_keys);
        } else if (name == "contrast") {
            apply_section(section, name, contrast_keys);
        } else if (name.rfind("stage.", 0) == 0 && name.size() == 7 && name[6] >= '1' && name[6] <= '5') {
            StageConfig& st = c.stages[static_cast<std::size_t>(name[6] - '1')];
            std::map<std::string, Setter> stage_keys{
                {"kind", [&](const std::string& k, const std::string& v) {
                     const std::string t = trim(v);
                     if (t == "linear") st.kind = StageKind::Linear;
                     else if (t == "nonlinear") st.kind = StageKind::NonLinear;
                     else parse_fail(k + ": expected 'linear' or 'nonlinear'");
                 }},
                {"B0", num(st.B0)},
                {"eta", num(st.eta)},
                {"duration", num(st.duration)},
                {"spin_left", [&](const std::string& k, const std::string& v) { st.spin_left = SpinState(to_int(k, v)); }},
                {"spin_right", [&](const std::string& k, const std::string& v) { st.spin_right = SpinState(to_int(k, v)); }},
                {"omega_x", num(st.omega_x)},
                {"omega_y", num(st.omega_y)},
            };
            try {
                apply_section(section, name, stage_keys);
            } catch (const Error& e) {
                if (e.code() == Errc::InvalidSpin) parse_fail(e.what());
                throw;
            }
        } else {
            parse_fail("unknown section [" + name + "]");
        }
    }

    if (!inertia_given) p.inertia = sphere_inertia(p.m, p.radius);
    try {
        if (!sigma0_given) p.sigma0 = ground_state_width(c.stages[0], p, c.constants);
        p.validate();
        (void)c.schedule();
    } catch (const Error& e) {
        parse_fail(e.what());
    }
    if (cs.n_occ < 0.0 || cs.sweep_n < 0.0 || cs.sweep_d < 0.0) parse_fail("contrast settings must be non-negative");
    if (!(cs.sweep_omega_min > 0.0) || cs.sweep_omega_max < cs.sweep_omega_min)
        parse_fail("contrast sweep needs 0 < sweep_omega_min <= sweep_omega_max");
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    const ParticleSpec& p = c.particle;
    std::ostringstream os;
    os << "[particle]\n"
       << "mass = " << fmt(p.m) << "\n"
       << "chi_rho = " << fmt(p.chi_rho) << "\n"
       << "mu_nv = " << fmt(p.mu_nv) << "\n"
       << "d_zfs = " << fmt(p.d_zfs) << "\n"
       << "radius = " << fmt(p.radius) << "\n"
       << "inertia = " << fmt(p.inertia) << "\n"
       << "d_off = " << fmt(p.d_off) << "\n"
       << "alpha_prime = " << fmt(p.alpha_prime) << "\n"
       << "sigma0 = " << fmt(p.sigma0) << "\n"
       << "y0 = " << fmt(p.y0) << "\n\n"
       << "[rotation]\n"
       << "beta0 = " << fmt(p.beta0) << "\n"
       << "omega0 = " << fmt(p.omega0) << "\n"
       << "sigma_p_alpha = " << fmt(p.sigma_p_alpha) << "\n"
       << "sigma_p_gamma = " << fmt(p.sigma_p_gamma) << "\n\n";
    for (std::size_t k = 0; k < kStageCount; ++k) {
        const StageConfig& st = c.stages[k];
        os << "[stage." << k + 1 << "]\n"
           << "kind = " << to_string(st.kind) << "\n"
           << "B0 = " << fmt(st.B0) << "\n"
           << "eta = " << fmt(st.eta) << "\n"
           << "duration = " << fmt(st.duration) << "\n"
           << "spin_left = " << st.spin_left.value() << "\n"
           << "spin_right = " << st.spin_right.value() << "\n"
           << "omega_x = " << fmt(st.omega_x) << "\n"
           << "omega_y = " << fmt(st.omega_y) << "\n\n";
    }
    const ContrastSettings& cs = c.contrast;
    os << "[contrast]\n"
       << "n_occ = " << fmt(cs.n_occ) << "\n"
       << "sweep_omega_min = " << fmt(cs.sweep_omega_min) << "\n"
       << "sweep_omega_max = " << fmt(cs.sweep_omega_max) << "\n"
       << "sweep_points = " << cs.sweep_points << "\n"
       << "sweep_d_list = " << fmt_list(cs.sweep_d_list) << "\n"
       << "sweep_n_list = " << fmt_list(cs.sweep_n_list) << "\n"
       << "sweep_n = " << fmt(cs.sweep_n) << "\n"
       << "sweep_d = " << fmt(cs.sweep_d) << "\n"
       << "delta_q = " << fmt(cs.delta_q) << "\n";
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(serialize_config(config))));
    return buf;
}

}  // namespace sgi
