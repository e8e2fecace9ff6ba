#include "fracvar/frac_operators.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/special_functions.hpp"

#include <cmath>

namespace fracvar {

namespace {

void check_order_closed(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("fractional order must lie in (0, 1]");
}

} // namespace

SampledFunction left_rl(const SampledFunction& f, double alpha) {
    check_order_closed(alpha);
    const int n = f.grid.n;
    const auto w = gl_weights(alpha, n).weights;
    const double ha = std::pow(f.grid.h, alpha);
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int k = 0; k <= i; ++k)
            acc += w[static_cast<std::size_t>(k)] * f[i - k];
        out[static_cast<std::size_t>(i)] = acc / ha;
    }
    out[0] = out[1];
    return SampledFunction(f.grid, std::move(out));
}

SampledFunction right_rl(const SampledFunction& f, double alpha) {
    check_order_closed(alpha);
    const int n = f.grid.n;
    const auto w = gl_weights(alpha, n).weights;
    const double ha = std::pow(f.grid.h, alpha);
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k <= n - i; ++k)
            acc += w[static_cast<std::size_t>(k)] * f[i + k];
        out[static_cast<std::size_t>(i)] = acc / ha;
    }
    out[static_cast<std::size_t>(n)] = out[static_cast<std::size_t>(n) - 1];
    return SampledFunction(f.grid, std::move(out));
}

double power_rule_left(double p, double alpha, double a, double x) {
    check_order_closed(alpha);
    if (!(p > -1.0) || !(p - alpha > -1.0))
        throw DomainError("power rule: requires p > -1 and p - alpha > -1");
    if (x < a)
        throw DomainError("power rule: requires x >= a");
    const double c = gamma_fn(p + 1.0) / gamma_fn(p + 1.0 - alpha);
    return c * std::pow(x - a, p - alpha);
}

SampledFunction frac_integral_left(const SampledFunction& f, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw DomainError("fractional integral: order parameter must lie in (0, 1)");
    const int n = f.grid.n;
    const double m = 1.0 - alpha; // order of the integral
    const double scale = std::pow(f.grid.h, m) / gamma_fn(m + 2.0);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    // Product trapezoid: f piecewise linear against the kernel, giving
    //   I_i = scale * sum_j c_{i,j} f_j
    // with the classical second-difference weights of (i-j)^{m+1}.
    std::vector<double> pw(static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n + 1; ++k)
        pw[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), m + 1.0);
    for (int i = 1; i <= n; ++i) {
        double acc = (pw[static_cast<std::size_t>(i) - 1] -
                      std::pow(static_cast<double>(i), m) * (i - m - 1.0)) * f[0];
        for (int j = 1; j < i; ++j) {
            const int d = i - j;
            acc += (pw[static_cast<std::size_t>(d) + 1] - 2.0 * pw[static_cast<std::size_t>(d)] +
                    pw[static_cast<std::size_t>(d) - 1]) * f[j];
        }
        acc += f[i];
        out[static_cast<std::size_t>(i)] = scale * acc;
    }
    return SampledFunction(f.grid, std::move(out));
}

double integrate(const SampledFunction& f) {
    return integrate_between(f, 0, f.grid.n);
}

double integrate_between(const SampledFunction& f, int i0, int i1) {
    if (i0 < 0 || i1 > f.grid.n || i0 >= i1)
        throw GridError("integrate: invalid node range");
    double acc = 0.0;
    for (int i = i0; i < i1; ++i)
        acc += f[i] + f[i + 1];
    return acc * f.grid.h / 2.0;
}

std::vector<double> trapezoid_weights(const Grid& g, int i0, int i1) {
    std::vector<double> mu(static_cast<std::size_t>(g.node_count()), 0.0);
    for (int i = i0; i <= i1; ++i)
        mu[static_cast<std::size_t>(i)] = g.h;
    mu[static_cast<std::size_t>(i0)] = g.h / 2.0;
    mu[static_cast<std::size_t>(i1)] = g.h / 2.0;
    return mu;
}

std::vector<double> adjoint_left_rl(const SampledFunction& z, double alpha) {
    check_order_closed(alpha);
    const int n = z.grid.n;
    const auto w = gl_weights(alpha, n).weights;
    const double ha = std::pow(z.grid.h, alpha);
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (int i = std::max(j, 1); i <= n; ++i)
            acc += w[static_cast<std::size_t>(i - j)] * z[i];
        if (j <= 1)
            acc += w[static_cast<std::size_t>(1 - j)] * z[0]; // fill row 0 = row 1
        out[static_cast<std::size_t>(j)] = acc / ha;
    }
    return out;
}

std::vector<double> adjoint_right_rl(const SampledFunction& z, double alpha) {
    check_order_closed(alpha);
    const int n = z.grid.n;
    const auto w = gl_weights(alpha, n).weights;
    const double ha = std::pow(z.grid.h, alpha);
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (int i = 0; i <= std::min(j, n - 1); ++i)
            acc += w[static_cast<std::size_t>(j - i)] * z[i];
        if (j >= n - 1)
            acc += w[static_cast<std::size_t>(j - (n - 1))] * z[n]; // fill row n = row n-1
        out[static_cast<std::size_t>(j)] = acc / ha;
    }
    return out;
}

} // namespace fracvar
