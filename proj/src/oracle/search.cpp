#include "sgi/oracle/search.hpp"

#include <algorithm>
#include <cmath>

#include "sgi/errors.hpp"

namespace sgi::oracle {

GridMax grid_max_abs(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) throw Error(Errc::InvalidArgument, "grid search needs n >= 2 and lo < hi");
    const double h = (hi - lo) / static_cast<double>(n - 1);
    GridMax best{lo, std::abs(f(lo))};
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double t = i + 1 == n ? hi : lo + h * static_cast<double>(i);
        const double v = std::abs(f(t));
        if (v > best.value) {
            best = {t, v};
            best_i = i;
        }
    }
    double a = best_i == 0 ? lo : lo + h * static_cast<double>(best_i - 1);
    double b = best_i + 1 >= n ? hi : lo + h * static_cast<double>(best_i + 1);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int it = 0; it < 200 && (b - a) > 1.0e-15 * std::max(1.0, std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = std::abs(f(d));
        }
    }
    if (fc > best.value) best = {c, fc};
    if (fd > best.value) best = {d, fd};
    return best;
}

}  // namespace sgi::oracle
