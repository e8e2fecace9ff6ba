#include "fracvar/builtins.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/frac_operators.hpp"
#include "fracvar/special_functions.hpp"

#include <cmath>

namespace fracvar {

BuiltinProblem builtin_eq_ex(double alpha, int n) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw ProblemError("alpha: must lie in (0, 1]");
    BuiltinProblem bp;
    bp.name = "eq_ex";
    bp.problem.lagrangian = parse("x^4 + u^2");
    bp.problem.constraint = parse("x^2*u");
    bp.problem.level = 0.2;
    bp.problem.alpha = alpha;
    bp.problem.a = 0.0;
    bp.problem.b = 1.0;
    bp.problem.y_a = 0.0;
    bp.problem.y_b = 2.0 / gamma_fn(alpha + 3.0);
    bp.options.n = n;
    bp.analytic_solution = [alpha](const Grid& g) {
        const double c = 2.0 / gamma_fn(alpha + 3.0);
        return sample(g, [&](double x) { return c * std::pow(x, alpha + 2.0); });
    };
    return bp;
}

double psi_objective(double alpha, int n) {
    if (!(alpha >= 0.0))
        throw DomainError("psi objective: order must be nonnegative");
    const Grid g(0.0, 1.0, n);
    const double c = gamma_fn(alpha + 1.0);
    const SampledFunction f = sample(g, [&](double x) {
        const double t = std::pow(x, alpha) * c;
        return t * t;
    });
    return integrate(f);
}

BuiltinProblem builtin_psi(double alpha, int n) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw ProblemError("alpha: must lie in (0, 1]");
    BuiltinProblem bp;
    bp.name = "psi";
    bp.problem.lagrangian = parse("((x^alpha/gamma(alpha+1))*u^2 - 2*x^alpha*u)^2");
    bp.problem.alpha = alpha;
    bp.problem.a = 0.0;
    bp.problem.b = 1.0;
    bp.problem.y_a = 0.0;
    bp.problem.y_b = 1.0;
    bp.options.n = n;
    // The functional is quartic in u with flat valleys; Newton needs to
    // start near the power-law stationary curve to land on it.
    {
        const Grid g(0.0, 1.0, n);
        std::vector<double> guess(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i)
            guess[static_cast<std::size_t>(i)] = std::pow(g.node(i), alpha);
        bp.options.initial_guess = std::move(guess);
    }
    bp.analytic_solution = [alpha](const Grid& g) {
        return sample(g, [&](double x) { return std::pow(x, alpha); });
    };
    bp.alpha_objective = [](double al, int nq) { return psi_objective(al, nq); };
    return bp;
}

BuiltinProblem builtin_by_name(const std::string& token, std::optional<double> alpha,
                               std::optional<int> n) {
    if (token == "builtin:eq_ex")
        return builtin_eq_ex(alpha.value_or(0.5), n.value_or(1024));
    if (token == "builtin:psi")
        return builtin_psi(alpha.value_or(0.5), n.value_or(512));
    throw ProblemError("unknown builtin problem '" + token + "'");
}

} // namespace fracvar
