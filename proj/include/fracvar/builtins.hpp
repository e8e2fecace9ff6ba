#pragma once

#include "fracvar/solver.hpp"

#include <functional>
#include <string>

namespace fracvar {

// A problem shipped with the tool: the statement plus, when known, the
// closed-form solution and a closed-form order-dependent objective.
struct BuiltinProblem {
    std::string name;
    IsoProblem problem;
    SolverOptions options;
    // Closed-form solution sampled on a grid (null when unknown).
    std::function<SampledFunction(const Grid&)> analytic_solution;
    // Objective for order optimization evaluated by quadrature on n
    // intervals (null when the order objective requires inner solves).
    std::function<double(double alpha, int n)> alpha_objective;
};

// Quadratic-cost isoperimetric problem with the power-law solution
//   minimize   integral of x^4 + u^2
//   subject to integral of x^2 * u = 1/5,  y(0) = 0,  y(1) = 2/Gamma(alpha+3),
// whose solution is y = 2 x^{alpha+2} / Gamma(alpha+3), with multiplier 2.
// At alpha = 1 it reduces to the classical problem with y = x^3/3.
BuiltinProblem builtin_eq_ex(double alpha = 0.5, int n = 1024);

// Order-sensitive quartic functional
//   integral of ( x^alpha/Gamma(alpha+1) * u^2 - 2 x^alpha * u )^2,
// y(0) = 0, y(1) = 1, stationary at y = x^alpha.  Its value along that
// curve reduces to integral of (x^alpha Gamma(alpha+1))^2, which has the
// closed form Gamma(alpha+1)^2 / (2 alpha + 1); the order minimizing it
// sits near 0.9.
BuiltinProblem builtin_psi(double alpha = 0.5, int n = 512);

// Lookup by the CLI token ("builtin:eq_ex" or "builtin:psi"); throws
// ProblemError for unknown names.
BuiltinProblem builtin_by_name(const std::string& token, std::optional<double> alpha,
                               std::optional<int> n);

// Quadrature of (x^alpha Gamma(alpha+1))^2 over [0,1] on n intervals.
double psi_objective(double alpha, int n);

} // namespace fracvar
