#pragma once

#include "fracvar/grid.hpp"

namespace fracvar {

// Left Riemann-Liouville derivative of order alpha in (0,1], discretized
// by the (unshifted) Grunwald-Letnikov convolution
//   D_i = h^{-alpha} * sum_{k=0}^{i} w_k f_{i-k}.
// Node 0 is filled with node 1's value: the continuous operator is
// generally unbounded at x = a unless f(a) = 0.  For alpha = 1 this is the
// backward difference.
SampledFunction left_rl(const SampledFunction& f, double alpha);

// Right Riemann-Liouville derivative, the mirror scheme
//   D_i = h^{-alpha} * sum_{k=0}^{n-i} w_k f_{i+k},
// with node n filled from node n-1.  For alpha = 1 it is minus the forward
// difference.
SampledFunction right_rl(const SampledFunction& f, double alpha);

// Closed form for the left derivative of a power:
//   D^alpha (x-a)^p = Gamma(p+1)/Gamma(p+1-alpha) * (x-a)^{p-alpha}.
// Requires p > -1 and p - alpha > -1; serves as the oracle for left_rl.
double power_rule_left(double p, double alpha, double a, double x);

// Left Riemann-Liouville integral of order 1 - alpha (alpha in (0,1)),
// evaluated by the product-trapezoidal rule.  Composing with d/dx gives an
// independent route to the derivative of order alpha.
SampledFunction frac_integral_left(const SampledFunction& f, double alpha);

// Composite trapezoid over the whole grid.
double integrate(const SampledFunction& f);

// Composite trapezoid over nodes [i0, i1].
double integrate_between(const SampledFunction& f, int i0, int i1);

// Trapezoid node weights on [x_{i0}, x_{i1}], zero elsewhere.
std::vector<double> trapezoid_weights(const Grid& g, int i0, int i1);

// Transpose of the discrete left operator (fill row included) applied to z:
//   (L^T z)_j = h^{-alpha} [ sum_{i >= max(j,1)} w_{i-j} z_i  +  (j<=1 ? w_{1-j} z_0 : 0) ].
// This is the exact adjoint of left_rl as a matrix, which is what the
// gradient of a discretized functional needs.
std::vector<double> adjoint_left_rl(const SampledFunction& z, double alpha);

// Transpose of the discrete right operator (fill row included).
std::vector<double> adjoint_right_rl(const SampledFunction& z, double alpha);

} // namespace fracvar
