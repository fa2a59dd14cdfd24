#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace sgi::oracle {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, Newton iteration on the Legendre polynomial.
QuadratureRule gauss_legendre(std::size_t n);

/// Nodes and weights of a composite rule: `panels` equal panels on [lo, hi],
/// each with the given rule.
struct CompositeGrid {
    std::vector<double> x;
    std::vector<double> w;
};

CompositeGrid composite_grid(double lo, double hi, std::size_t panels, const QuadratureRule& rule);

std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, const CompositeGrid& grid);

}  // namespace sgi::oracle
