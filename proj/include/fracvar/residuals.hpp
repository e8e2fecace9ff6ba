#pragma once

#include "fracvar/problem.hpp"

namespace fracvar {

enum class Functional { Cost, Constraint };

// Value of the cost or constraint functional at y: u and v fields are
// computed over the whole base interval, the integrand is evaluated
// nodewise, and the trapezoid runs over [A, B] only.
double eval_functional(const IsoProblem& p, Functional which, const SampledFunction& y);

// Euler-Lagrange residual field of the cost integrand,
//   dL/dy + D_right^alpha(dL/du) + D_left^beta(dL/dv),
// for full-interval problems (A = a, B = b); terms whose variable is
// absent from L are omitted.
ResidualReport el_residual(const IsoProblem& p, const SampledFunction& y);

// Residual of the multiplier-augmented integrand lambda0*L - lambda*g.
ResidualReport iso_residual(const IsoProblem& p, const SampledFunction& y,
                            double lambda0, double lambda);

// Whether y annihilates the constraint functional's Euler-Lagrange field.
// On `tol <= 0` the threshold defaults to 1e-3 * (1 + sup of the sampled
// partial fields of g), loose enough to flag genuinely non-stationary y
// while manufactured extremals pass.
struct ExtremalCheck {
    bool is_extremal;
    double norm;
    double tolerance;
};
ExtremalCheck extremal_check(const IsoProblem& p, const SampledFunction& y, double tol = 0.0);

// The three-field conditions for subinterval functionals: the middle
// Euler-Lagrange equation on [A, B] (right operator based at B, left
// operator based at A) plus the tail conditions on [a, A] and [B, b].
// With A = a and B = b this reduces node-for-node to iso_residual.
// A and B must land on grid nodes.
ResidualReport extended_residuals(const IsoProblem& p, const SampledFunction& y,
                                  double lambda0, double lambda);

// Integration-by-parts defect
//   integral(f * D_left^alpha g) - integral(g * D_right^alpha f).
double ibp_defect(const SampledFunction& f, const SampledFunction& g, double alpha);

// Stationarity of the functional with respect to the order:
//   integral over [a,b] of dL/du * d/dalpha(D_left^alpha y),
// the order-derivative taken by the central difference with step dalpha.
double alpha_stationarity(const IsoProblem& p, const SampledFunction& y,
                          double dalpha = 1e-4);

// Exact gradient of the discretized functional with respect to the node
// values (chain rule through the trapezoid weights and the discrete
// operators' transposes).  Entries 0 and n correspond to the boundary
// nodes and are not meaningful for optimization.
std::vector<double> discrete_gradient(const IsoProblem& p, Functional which,
                                      const SampledFunction& y);

} // namespace fracvar
