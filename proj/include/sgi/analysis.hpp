#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sgi {

/// Angular frequency from the spacing of linearly interpolated zero
/// crossings of v(t). Returns 0 when fewer than three crossings exist.
double zero_crossing_frequency(std::span<const double> t, std::span<const double> v);

/// max - min of v over consecutive windows of [t_begin, t_end).
std::vector<double> windowed_peak_to_peak(std::span<const double> t, std::span<const double> v,
                                          double t_begin, double t_end, std::size_t windows);

/// (max - min) / mean of a set of positive values.
double relative_spread(std::span<const double> values);

}  // namespace sgi
