#include "sgi/oracle/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "sgi/errors.hpp"

namespace sgi::oracle {

QuadratureRule gauss_legendre(std::size_t n) {
    if (n == 0 || n > 512) throw Error(Errc::InvalidArgument, "Gauss-Legendre order must be in [1, 512]");
    static std::mutex mu;
    static std::map<std::size_t, QuadratureRule> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const auto un = static_cast<unsigned>(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Roots come out descending; store ascending.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double p = std::legendre(un, x);
            const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
            dp = static_cast<double>(n) * (x * p - pm) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1.0e-16) break;
        }
        {
            const double p = std::legendre(un, x);
            const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
            dp = static_cast<double>(n) * (x * p - pm) / (x * x - 1.0);
        }
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    std::lock_guard lock(mu);
    cache.emplace(n, r);
    return r;
}

CompositeGrid composite_grid(double lo, double hi, std::size_t panels, const QuadratureRule& rule) {
    if (!(hi > lo) || panels == 0) throw Error(Errc::InvalidArgument, "composite grid needs lo < hi and panels > 0");
    CompositeGrid g;
    g.x.reserve(panels * rule.nodes.size());
    g.w.reserve(panels * rule.nodes.size());
    const double h = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = lo + h * static_cast<double>(p);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            g.x.push_back(a + 0.5 * h * (rule.nodes[i] + 1.0));
            g.w.push_back(0.5 * h * rule.weights[i]);
        }
    }
    return g;
}

std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, const CompositeGrid& grid) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < grid.x.size(); ++i) sum += grid.w[i] * f(grid.x[i]);
    return sum;
}

}  // namespace sgi::oracle
