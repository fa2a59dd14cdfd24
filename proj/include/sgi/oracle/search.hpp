#pragma once

#include <cstddef>
#include <functional>

namespace sgi::oracle {

struct GridMax {
    double t = 0.0;
    double value = 0.0;
};

/// max |f| over [lo, hi] from n uniform samples, then golden-section
/// refinement around the best sample.
GridMax grid_max_abs(const std::function<double(double)>& f, double lo, double hi, std::size_t n);

}  // namespace sgi::oracle
