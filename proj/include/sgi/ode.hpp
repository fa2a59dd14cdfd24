#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace sgi::ode {

enum class Method { DormandPrince54 };

struct IntegratorOptions {
    double rel_tol = 1.0e-10;
    double abs_tol = 1.0e-13;
    double max_step = std::numeric_limits<double>::infinity();  // s
    double initial_step = 0.0;                                   // 0 picks one automatically
    std::size_t max_steps = 50'000'000;
    Method method = Method::DormandPrince54;

    void validate() const;
};

/// dydt = f(t, y); both spans have the state dimension.
using Rhs = std::function<void(double t, const double* y, double* dydt)>;

struct Solution {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<double> final_state;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;
};

/// Adaptive Dormand-Prince 5(4) with 4th-order dense output at sample_times,
/// which must be non-decreasing and inside [t0, t1].
Solution integrate(const Rhs& rhs, std::vector<double> y0, double t0, double t1,
                   const std::vector<double>& sample_times, const IntegratorOptions& options = {});

}  // namespace sgi::ode
