#include "fracvar/grid.hpp"
#include "fracvar/errors.hpp"

#include <cmath>
#include <string>

namespace fracvar {

Grid::Grid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
    if (!(a < b))
        throw GridError("grid: requires a < b");
    if (n < 2)
        throw GridError("grid: requires n >= 2");
    h = (b - a) / n;
}

int Grid::index_of(double x) const {
    const double t = (x - a) / h;
    const int i = static_cast<int>(std::lround(t));
    if (i < 0 || i > n || std::abs(x - node(i)) > 1e-9 * (std::abs(x) + h))
        throw GridError("grid: " + std::to_string(x) + " is not a grid node");
    return i;
}

bool Grid::same_as(const Grid& other) const {
    return n == other.n && std::abs(a - other.a) <= 1e-12 * (1 + std::abs(a)) &&
           std::abs(b - other.b) <= 1e-12 * (1 + std::abs(b));
}

SampledFunction::SampledFunction(Grid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.node_count())
        throw GridError("sampled function: value count does not match grid");
}

SampledFunction restrict_to(const SampledFunction& f, int i0, int i1) {
    if (i0 < 0 || i1 > f.grid.n || i1 - i0 < 2)
        throw GridError("restrict: invalid subgrid range");
    Grid sub(f.grid.node(i0), f.grid.node(i1), i1 - i0);
    sub.h = f.grid.h; // share the parent step exactly
    std::vector<double> v(f.values.begin() + i0, f.values.begin() + i1 + 1);
    return SampledFunction(sub, std::move(v));
}

double sup_excluding_ends(const std::vector<double>& values, int margin) {
    double s = 0.0;
    const int n = static_cast<int>(values.size());
    for (int i = margin; i < n - margin; ++i)
        s = std::max(s, std::abs(values[static_cast<std::size_t>(i)]));
    return s;
}

} // namespace fracvar
