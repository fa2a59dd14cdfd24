#pragma once

#include <numbers>

namespace sgi {

/// SI values. h is exact (2019 SI) and hbar is derived from it.
struct PhysicalConstants {
    double h = 6.62607015e-34;                          // J s
    double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi); // J s
    double mu0 = 4.0e-7 * std::numbers::pi;             // T m / A
    double kB = 1.380649e-23;                           // J / K

    void validate() const;
};

}  // namespace sgi
