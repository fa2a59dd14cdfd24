#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numbers>

#include "sgi/config.hpp"
#include "sgi/errors.hpp"

using namespace sgi;

namespace {

Errc parse_code(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("round trip and hash") {
    const RunConfig c = table1_preset();
    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(config_hash(back) == config_hash(c));
    CHECK(config_hash(c).size() == 16);
    CHECK(back.particle.sigma0 == c.particle.sigma0);
    for (std::size_t k = 0; k < kStageCount; ++k) {
        CHECK(back.stages[k].eta == c.stages[k].eta);
        CHECK(back.stages[k].duration == c.stages[k].duration);
        CHECK(back.stages[k].spin_left.value() == c.stages[k].spin_left.value());
    }
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("empty text gives the preset") {
    CHECK(serialize_config(parse_config("")) == serialize_config(table1_preset()));
}

TEST_CASE("stage sections and overrides") {
    const RunConfig c = parse_config("[stage.4]\neta = 5.1e6\nduration = 0.11\n[stage.1]\nspin_left = -1\nspin_right = 1\n");
    CHECK(c.stages[3].eta == 5.1e6);
    CHECK(c.stages[3].duration == 0.11);
    CHECK(c.stages[0].spin_left.value() == -1);
    CHECK(c.stages[1].eta == table1_preset().stages[1].eta);
    CHECK(config_hash(c) != config_hash(table1_preset()));
}

TEST_CASE("beta0 in degrees") {
    const RunConfig c = parse_config("[rotation]\nbeta0_deg = 0.5729577951308232\n");
    CHECK(c.particle.beta0 == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("inertia follows the radius unless given") {
    const RunConfig c = parse_config("[particle]\nradius = 5e-7\n");
    CHECK(c.particle.inertia == doctest::Approx(0.4 * c.particle.m * 25e-14));
    const RunConfig d = parse_config("[particle]\nradius = 5e-7\ninertia = 1e-28\n");
    CHECK(d.particle.inertia == 1e-28);
}

TEST_CASE("rejections") {
    CHECK(parse_code("[particle]\nmas = 1\n") == Errc::ConfigParse);
    CHECK(parse_code("[stage.6]\neta = 1\n") == Errc::ConfigParse);
    CHECK(parse_code("[stage]\neta = 1\n") == Errc::ConfigParse);
    CHECK(parse_code("[bogus]\nx = 1\n") == Errc::ConfigParse);
    CHECK(parse_code("[particle]\nmass = abc\n") == Errc::ConfigParse);
    CHECK(parse_code("[particle]\nmass = 1e999\n") == Errc::ConfigParse);
    CHECK(parse_code("[stage.1]\nspin_left = 2\n") == Errc::ConfigParse);
    CHECK(parse_code("[stage.1]\nspin_left = 0.5\n") == Errc::ConfigParse);
    CHECK(parse_code("[stage.2]\nkind = quadratic\n") == Errc::ConfigParse);
    CHECK(parse_code("[stage.2]\nduration = -1\n") == Errc::ConfigParse);
    CHECK(parse_code("[contrast]\nsweep_d_list =\n") == Errc::ConfigParse);
    CHECK(parse_code("[contrast]\nsweep_points = 0\n") == Errc::ConfigParse);
    CHECK(parse_code("[contrast]\nn_occ = -1\n") == Errc::ConfigParse);
    CHECK(parse_code("[contrast]\nsweep_omega_min = 1e6\nsweep_omega_max = 1e5\n") == Errc::ConfigParse);
    CHECK(parse_code("[particle\n") == Errc::ConfigParse);
}

TEST_CASE("missing file") {
    try {
        load_config(std::filesystem::temp_directory_path() / "sgi-no-such-file.ini");
        FAIL("expected ConfigParse");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ConfigParse);
    }
}

TEST_CASE("swap arms") {
    auto st = table1_stages();
    swap_arm_spins(st);
    CHECK(st[0].spin_left.value() == -1);
    CHECK(st[0].spin_right.value() == 1);
    CHECK(serialize_config(table1_preset(true)) != serialize_config(table1_preset(false)));
}
