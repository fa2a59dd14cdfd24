#include "sgi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "sgi/errors.hpp"

namespace sgi {

double zero_crossing_frequency(std::span<const double> t, std::span<const double> v) {
    if (t.size() != v.size()) throw Error(Errc::InvalidArgument, "time and value lengths differ");
    std::vector<double> crossings;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if ((v[i - 1] < 0.0 && v[i] >= 0.0) || (v[i - 1] > 0.0 && v[i] <= 0.0)) {
            const double f = v[i - 1] / (v[i - 1] - v[i]);
            crossings.push_back(t[i - 1] + f * (t[i] - t[i - 1]));
        }
    }
    if (crossings.size() < 3) return 0.0;
    const double half_periods = static_cast<double>(crossings.size() - 1);
    return std::numbers::pi * half_periods / (crossings.back() - crossings.front());
}

std::vector<double> windowed_peak_to_peak(std::span<const double> t, std::span<const double> v,
                                          double t_begin, double t_end, std::size_t windows) {
    if (t.size() != v.size()) throw Error(Errc::InvalidArgument, "time and value lengths differ");
    if (windows == 0 || !(t_end > t_begin)) throw Error(Errc::InvalidArgument, "invalid window layout");
    const double width = (t_end - t_begin) / static_cast<double>(windows);
    std::vector<double> lo(windows, std::numeric_limits<double>::infinity());
    std::vector<double> hi(windows, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_begin || t[i] >= t_end) continue;
        const auto w = std::min(windows - 1, static_cast<std::size_t>((t[i] - t_begin) / width));
        lo[w] = std::min(lo[w], v[i]);
        hi[w] = std::max(hi[w], v[i]);
    }
    std::vector<double> out(windows);
    for (std::size_t w = 0; w < windows; ++w) out[w] = hi[w] - lo[w];
    return out;
}

double relative_spread(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    return (*mx - *mn) / mean;
}

}  // namespace sgi
