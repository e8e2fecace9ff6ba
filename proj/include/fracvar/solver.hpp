#pragma once

#include "fracvar/problem.hpp"
#include "fracvar/residuals.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace fracvar {

struct SolverOptions {
    int n = 1024;                              // grid intervals (>= 16)
    int max_iterations = 100;
    double kkt_tolerance = 1e-9;
    double abnormal_gradient_tolerance = 1e-8; // times (1 + constraint data scale)
    std::optional<std::vector<double>> initial_guess; // node values; linear interpolant otherwise

    void validate() const;
};

struct SolveResult {
    SampledFunction y;
    double lambda0 = 1.0;
    double lambda = 0.0;
    double constraint_gap = 0.0;
    double residual_norm = 0.0; // sup norm of the discrete stationarity equations
    int iterations = 0;
    bool abnormal = false;
};

struct NonConvergenceError : std::runtime_error {
    SolveResult last;
    NonConvergenceError(const std::string& msg, SolveResult r)
        : std::runtime_error(msg), last(std::move(r)) {}
};

struct InfeasibleError : std::runtime_error {
    SolveResult last;
    InfeasibleError(const std::string& msg, SolveResult r)
        : std::runtime_error(msg), last(std::move(r)) {}
};

struct NoStationaryPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Direct (discretize-then-optimize) solution of the unconstrained problem:
// interior node values are the unknowns, derivatives enter through the
// discrete operator matrices, the functional through trapezoid weights.
// Newton iterations on the discrete gradient; converges when the interior
// gradient sup norm drops below kkt_tolerance.
SolveResult solve_unconstrained(const IsoProblem& p, const SolverOptions& opts);

// Newton-KKT solution of the isoperimetric problem (stationarity of the
// cost minus lambda times the constraint, plus feasibility).  When the
// discrete constraint gradient at the solution is structurally degenerate,
// re-solves with (lambda0, lambda) = (0, 1) and flags the result abnormal.
SolveResult solve_isoperimetric(const IsoProblem& p, const SolverOptions& opts);

// Stationary point of a one-dimensional objective over [lo, hi], located
// by bisection on the centrally differenced derivative (step deriv_step;
// one-sided at bracket ends when alpha +/- step would leave (0, 1]).
// Returns (alpha_star, objective(alpha_star)); requires a sign change of
// the derivative over the bracket, else NoStationaryPointError.
std::pair<double, double> optimize_alpha(const std::function<double(double)>& objective,
                                         double lo, double hi,
                                         double deriv_step = 1e-4,
                                         double deriv_tolerance = 1e-6);

// Objective alpha -> J(y_alpha) where y_alpha is obtained by
// solve_unconstrained on a copy of p with that order.
std::function<double(double)> solver_alpha_objective(IsoProblem p, SolverOptions opts);

// Diagnostics for order-dependent problems: the Euler-Lagrange residual
// norm of the cost at the given order, and the alpha-stationarity
// integral.  Both vanish (up to discretization) at an extremal pair
// (y, alpha).
struct SystemCheck {
    double el_norm;
    double alpha_residual;
};
SystemCheck stationarity_system_check(const IsoProblem& p, const SampledFunction& y,
                                      double alpha, double dalpha = 1e-4);

} // namespace fracvar
