#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sgi/core.hpp"

namespace sgi {

/// Thermal-contrast and sweep settings.
struct ContrastSettings {
    double n_occ = 20.0;
    double sweep_omega_min = 2.0e4;   // rad/s
    double sweep_omega_max = 1.0e7;   // rad/s
    std::size_t sweep_points = 61;
    std::vector<double> sweep_d_list{0.0, 5.0e-9, 1.0e-8, 2.0e-8, 5.0e-8};  // m, at sweep_n
    std::vector<double> sweep_n_list{0.0, 1.0, 10.0, 20.0, 100.0};         // at sweep_d
    double sweep_n = 20.0;
    double sweep_d = 1.0e-8;          // m
    double delta_q = 0.1;             // rad
};

struct RunConfig {
    PhysicalConstants constants{};
    ParticleSpec particle{};
    std::array<StageConfig, kStageCount> stages{};
    ContrastSettings contrast{};

    Schedule schedule() const;
};

/// Reference schedule with the default nanodiamond; sigma0 is the ground
/// state width of stage 1.
RunConfig table1_preset(bool swap_arms = false);

/// INI text with sections [particle], [rotation], [stage.1]..[stage.5] and
/// [contrast]. Missing keys keep their preset values; unknown sections or
/// keys are rejected. Throws Errc::ConfigParse.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical INI form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

/// 64-bit FNV-1a of the canonical form, as 16 hex digits.
std::string config_hash(const RunConfig& config);
std::uint64_t fnv1a64(const std::string& bytes) noexcept;

/// Flip the spin assignment of every Linear stage.
void swap_arm_spins(std::array<StageConfig, kStageCount>& stages);

}  // namespace sgi
