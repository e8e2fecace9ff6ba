#pragma once

#include <cstddef>
#include <vector>

namespace fracvar {

// Uniform partition of [a, b] into n intervals; nodes x_i = a + i*h.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int n = 2;
    double h = 0.5;

    Grid() = default;
    Grid(double a_, double b_, int n_);

    double node(int i) const { return a + i * h; }
    int node_count() const { return n + 1; }

    // Index of a node equal to x (up to a relative tolerance of h);
    // throws GridError when x does not land on a node.
    int index_of(double x) const;

    bool same_as(const Grid& other) const;
};

// Real values attached to the nodes of a grid.  Immutable by convention
// once built; operators return fresh instances.
struct SampledFunction {
    Grid grid;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(Grid g, std::vector<double> v);

    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Sample f at every node.
template <class F>
SampledFunction sample(const Grid& g, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(g.node_count()));
    for (int i = 0; i <= g.n; ++i)
        v[static_cast<std::size_t>(i)] = f(g.node(i));
    return SampledFunction(g, std::move(v));
}

// Restriction to the subgrid [x_{i0}, x_{i1}] sharing the parent step.
SampledFunction restrict_to(const SampledFunction& f, int i0, int i1);

// Sup norm over nodes, skipping `margin` nodes at each end of the array.
// Residual fields are conventionally filled at operator endpoints, so
// interior norms skip 2 nodes per end.
double sup_excluding_ends(const std::vector<double>& values, int margin);

inline double sup_interior(const SampledFunction& f) {
    return sup_excluding_ends(f.values, 2);
}

} // namespace fracvar
