#pragma once

#include <vector>

namespace fracvar {

// Euler gamma function for x > 0.  Relative error below 1e-12 on (0, 50].
// Throws DomainError for x <= 0 and OverflowError when the result exceeds
// the double range (x > ~171.6).
double gamma_fn(double x);

// log(Gamma(x)) for x > 0.
double log_gamma(double x);

// Digamma psi0(x) = d/dx log(Gamma(x)) for x > 0.  Absolute error below
// 1e-10 on (0.1, 50].
double digamma(double x);

// Grunwald-Letnikov coefficient sequence for a fractional order in (0,1]:
//   w0 = 1,  wk = w_{k-1} * (k - 1 - alpha) / k.
// Equivalently wk = (-1)^k * C(alpha, k).  For alpha in (0,1) every wk with
// k >= 1 is negative and the partial sums decrease monotonically toward 0;
// for alpha = 1 the sequence is the backward-difference stencil 1, -1, 0, ...
struct GlWeights {
    double alpha;
    std::vector<double> weights; // w0 .. wN
};

// Weights w0..wn computed by the multiplicative recurrence (stable for
// n ~ 1e4; factorial forms overflow long before that).
GlWeights gl_weights(double alpha, int n);

} // namespace fracvar
