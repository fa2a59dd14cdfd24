#include "sgi/constants.hpp"

#include <cmath>

#include "sgi/errors.hpp"

namespace sgi {

void PhysicalConstants::validate() const {
    for (double v : {h, hbar, mu0, kB}) {
        if (!(std::isfinite(v) && v > 0.0))
            throw Error(Errc::InvalidConstants, "physical constants must be finite and positive");
    }
    if (std::abs(h - 2.0 * std::numbers::pi * hbar) > 4.0 * 2.220446049250313e-16 * h)
        throw Error(Errc::InvalidConstants, "h and hbar are inconsistent");
}

}  // namespace sgi
