#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sgi/constants.hpp"

namespace sgi {

enum class StageKind { Linear, NonLinear };
enum class Arm { Left, Right };

/// Sign convention of the harmonic trap terms.
/// AsWritten adds the trap with the sign of the field curvature; Conventional makes the
/// trap and the diamagnetic curvature both confining in y.
enum class TrapSign { AsWritten, Conventional };

const char* to_string(StageKind kind) noexcept;
const char* to_string(Arm arm) noexcept;
const char* to_string(TrapSign sign) noexcept;

/// NV electron spin projection, one of -1, 0, +1.
class SpinState {
public:
    constexpr SpinState() noexcept = default;
    explicit SpinState(int s);

    constexpr int value() const noexcept { return s_; }
    constexpr SpinState operator-() const noexcept { return SpinState(-s_, 0); }
    friend constexpr bool operator==(SpinState, SpinState) noexcept = default;

private:
    constexpr SpinState(int s, int) noexcept : s_(s) {}
    int s_ = 0;
};

/// Nanodiamond with an embedded NV centre. Defaults describe the 1e-15 kg
/// sphere; sigma0 has no default and must be resolved by the caller.
struct ParticleSpec {
    double m = 1.0e-15;                 // kg
    double chi_rho = -6.2e-9;           // m^3/kg
    double mu_nv = 0.0;                 // J/T, set from h below
    double d_zfs = 0.0;                 // rad/s
    double radius = 4.0858e-7;          // m
    double inertia = 0.0;               // kg m^2
    double d_off = 1.0e-8;              // m
    double alpha_prime = 0.0;           // rad
    double beta0 = 0.01;                // rad
    double omega0 = 0.0;                // rad/s
    double sigma0 = 0.0;                // m
    double y0 = 1.1e-6;                 // m
    double sigma_p_alpha = 0.0;         // J s
    double sigma_p_gamma = 0.0;         // J s

    /// Canonical momenta of the spinning rotor.
    double p_alpha() const noexcept;
    double p_gamma() const noexcept;

    void validate() const;
};

/// Default nanodiamond with every field except sigma0 filled in.
ParticleSpec nanodiamond(const PhysicalConstants& c = {});

double sphere_inertia(double mass, double radius) noexcept;
double degrees_to_radians(double deg) noexcept;

struct StageConfig {
    StageKind kind = StageKind::Linear;
    double B0 = 0.0;        // T
    double eta = 0.0;       // T/m (Linear) or T/m^2 (NonLinear)
    double duration = 0.0;  // s
    SpinState spin_left;
    SpinState spin_right;
    double omega_x = 0.0;   // rad/s
    double omega_y = 0.0;   // rad/s

    SpinState spin(Arm arm) const noexcept { return arm == Arm::Left ? spin_left : spin_right; }
};

inline constexpr std::size_t kStageCount = 5;

class Schedule {
public:
    const std::array<StageConfig, kStageCount>& stages() const noexcept { return stages_; }
    const StageConfig& stage(std::size_t k) const { return stages_.at(k); }
    /// Cumulative end times t1..t5.
    const std::array<double, kStageCount>& transitions() const noexcept { return transitions_; }

    double stage_start(std::size_t k) const;
    double stage_end(std::size_t k) const { return transitions_.at(k); }
    double total_time() const noexcept { return transitions_.back(); }

    /// Index of the stage containing t; intervals are [t_{k-1}, t_k) and t5
    /// itself belongs to the last stage.
    std::size_t stage_index(double t) const;
    const StageConfig& stage_at(double t) const { return stages_[stage_index(t)]; }

private:
    friend Schedule build_schedule(std::span<const StageConfig> configs);
    std::array<StageConfig, kStageCount> stages_{};
    std::array<double, kStageCount> transitions_{};
};

Schedule build_schedule(std::span<const StageConfig> configs);

SpinState spin_state_at(const Schedule& schedule, Arm arm, double t);

/// Uniform sample grid: n points per stage starting at each stage start,
/// plus the final time t5.
std::vector<double> schedule_grid(const Schedule& schedule, std::size_t samples_per_stage);

/// Reference stage parameters. With swap_arms the Left arm carries s = -1.
std::array<StageConfig, kStageCount> table1_stages(bool swap_arms = false);

/// Options shared by the equation-of-motion builders.
struct ModelOptions {
    PhysicalConstants constants{};
    bool trap_on = true;
    TrapSign trap_sign = TrapSign::AsWritten;
};

}  // namespace sgi
