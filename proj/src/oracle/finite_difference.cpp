#include "sgi/oracle/finite_difference.hpp"

#include <algorithm>
#include <cmath>

#include "sgi/errors.hpp"
#include "sgi/fields.hpp"

namespace sgi::oracle {

MaxwellResidual maxwell_residual(const StageConfig& stage, double x, double y, double h) {
    const FieldSample xp = field_at(stage, x + h, y), xm = field_at(stage, x - h, y);
    const FieldSample yp = field_at(stage, x, y + h), ym = field_at(stage, x, y - h);
    const double dBx_dx = (xp.Bx - xm.Bx) / (2.0 * h);
    const double dBy_dx = (xp.By - xm.By) / (2.0 * h);
    const double dBx_dy = (yp.Bx - ym.Bx) / (2.0 * h);
    const double dBy_dy = (yp.By - ym.By) / (2.0 * h);
    MaxwellResidual r;
    r.divergence = dBx_dx + dBy_dy;
    r.curl = dBx_dy - dBy_dx;
    r.scale = std::abs(dBx_dx) + std::abs(dBy_dy) + std::abs(dBx_dy) + std::abs(dBy_dx);
    return r;
}

MaxwellReport maxwell_grid(const StageConfig& stage, double half_extent, std::size_t n, double h) {
    if (n < 2 || !(half_extent > 0.0) || !(h > 0.0))
        throw Error(Errc::InvalidArgument, "Maxwell grid needs n >= 2 and positive extent and step");
    // Gradient magnitude of the profile over the grid: eta for the linear
    // field, 2 eta half_extent for the quadratic one.
    const double floor_scale =
        stage.kind == StageKind::Linear ? std::abs(stage.eta) : 2.0 * std::abs(stage.eta) * half_extent;
    MaxwellReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -half_extent + 2.0 * half_extent * static_cast<double>(i) / static_cast<double>(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            const double y = -half_extent + 2.0 * half_extent * static_cast<double>(j) / static_cast<double>(n - 1);
            const MaxwellResidual r = maxwell_residual(stage, x, y, h);
            const double scale = std::max(r.scale, floor_scale);
            rep.max_relative_divergence = std::max(rep.max_relative_divergence, std::abs(r.divergence) / scale);
            rep.max_relative_curl = std::max(rep.max_relative_curl, std::abs(r.curl) / scale);
            ++rep.points;
        }
    }
    return rep;
}

}  // namespace sgi::oracle
