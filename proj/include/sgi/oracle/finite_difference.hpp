#pragma once

#include <cstddef>

#include "sgi/core.hpp"

namespace sgi::oracle {

struct MaxwellResidual {
    double divergence = 0.0;  // dBx/dx + dBy/dy
    double curl = 0.0;        // dBx/dy - dBy/dx
    double scale = 0.0;       // magnitude the residuals are compared against
};

/// Central differences with step h at (x, y).
MaxwellResidual maxwell_residual(const StageConfig& stage, double x, double y, double h);

struct MaxwellReport {
    double max_relative_divergence = 0.0;
    double max_relative_curl = 0.0;
    std::size_t points = 0;
};

/// n x n grid over [-half_extent, half_extent]^2. Residuals are taken
/// relative to eta times the field scale length of the stage.
MaxwellReport maxwell_grid(const StageConfig& stage, double half_extent, std::size_t n, double h);

}  // namespace sgi::oracle
