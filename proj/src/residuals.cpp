#include "fracvar/residuals.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/frac_operators.hpp"

#include <cmath>

namespace fracvar {

namespace {

struct NodeFields {
    SampledFunction u; // left derivative of y, zero field when unused
    SampledFunction v; // right derivative of y
    bool has_u = false;
    bool has_v = false;
};

NodeFields derivative_fields(const IsoProblem& p, const Expr& integrand,
                             const SampledFunction& y) {
    NodeFields nf;
    nf.has_u = references(integrand, Var::U);
    nf.has_v = references(integrand, Var::V);
    if (nf.has_u) {
        if (!p.alpha)
            throw ProblemError("alpha: required because an integrand references u");
        nf.u = left_rl(y, *p.alpha);
    } else {
        nf.u = SampledFunction(y.grid, std::vector<double>(y.values.size(), 0.0));
    }
    if (nf.has_v) {
        if (!p.beta)
            throw ProblemError("beta: required because an integrand references v");
        nf.v = right_rl(y, *p.beta);
    } else {
        nf.v = SampledFunction(y.grid, std::vector<double>(y.values.size(), 0.0));
    }
    return nf;
}

Environment node_env(const IsoProblem& p, const SampledFunction& y,
                     const NodeFields& nf, int i) {
    Environment env;
    env.x = y.grid.node(i);
    env.y = y[i];
    env.u = nf.u[i];
    env.v = nf.v[i];
    env.alpha = p.alpha.value_or(0.0);
    return env;
}

SampledFunction sample_expr(const IsoProblem& p, const Expr& e,
                            const SampledFunction& y, const NodeFields& nf) {
    std::vector<double> vals(y.values.size());
    for (int i = 0; i <= y.grid.n; ++i)
        vals[static_cast<std::size_t>(i)] = eval(e, node_env(p, y, nf, i));
    return SampledFunction(y.grid, std::move(vals));
}

// Multiplier-augmented integrand lambda0*L - lambda*g, formed structurally;
// the multipliers stay numeric constants, not expression variables.
Expr augmented(const IsoProblem& p, double lambda0, double lambda) {
    Expr K = binary(BinaryOp::Mul, constant(lambda0), p.lagrangian);
    if (p.has_constraint())
        K = binary(BinaryOp::Sub, K, binary(BinaryOp::Mul, constant(lambda), p.constraint));
    return K;
}

// Shared assembly for the Euler-Lagrange conditions of an integrand K on
// the integration interval [A, B] of p.  The right operator applied to
// dK/du is based at B (and at A for the left-tail condition); the left
// operator applied to dK/dv is based at A (and at B for the right tail).
// With A = a, B = b this is the plain full-interval residual.
ResidualReport assemble_conditions(const IsoProblem& p, const Expr& K,
                                   const SampledFunction& y) {
    const Grid& g = y.grid;
    const int n = g.n;
    const int iA = g.index_of(p.lower_bound());
    const int iB = g.index_of(p.upper_bound());

    NodeFields nf = derivative_fields(p, K, y);

    const Expr Ky = diff(K, Var::Y);
    const Expr Ku = diff(K, Var::U);
    const Expr Kv = diff(K, Var::V);
    const bool with_u = nf.has_u && !is_zero_const(Ku);
    const bool with_v = nf.has_v && !is_zero_const(Kv);

    std::vector<double> middle(static_cast<std::size_t>(iB - iA) + 1, 0.0);
    for (int i = iA; i <= iB; ++i)
        middle[static_cast<std::size_t>(i - iA)] = eval(Ky, node_env(p, y, nf, i));

    std::optional<SampledFunction> left_tail;
    std::optional<SampledFunction> right_tail;

    if (with_u) {
        const SampledFunction zu = sample_expr(p, Ku, y, nf);
        // D_right^alpha based at B, available on [a, B]
        const SampledFunction t1 = right_rl(restrict_to(zu, 0, iB), *p.alpha);
        for (int i = iA; i <= iB; ++i)
            middle[static_cast<std::size_t>(i - iA)] += t1[i];
        if (iA > 0) {
            // tail condition on [a, A]: (D_B - D_A) dK/du = 0
            const SampledFunction t2 = right_rl(restrict_to(zu, 0, iA), *p.alpha);
            std::vector<double> tail(static_cast<std::size_t>(iA) + 1);
            for (int i = 0; i <= iA; ++i)
                tail[static_cast<std::size_t>(i)] = t1[i] - t2[i];
            left_tail = SampledFunction(restrict_to(zu, 0, iA).grid, std::move(tail));
        }
    }
    if (with_v) {
        const SampledFunction zv = sample_expr(p, Kv, y, nf);
        // D_left^beta based at A, available on [A, b]
        const SampledFunction s1 = left_rl(restrict_to(zv, iA, n), *p.beta);
        for (int i = iA; i <= iB; ++i)
            middle[static_cast<std::size_t>(i - iA)] += s1[i - iA];
        if (iB < n) {
            // tail condition on [B, b]: (D_A - D_B) dK/dv = 0
            const SampledFunction s2 = left_rl(restrict_to(zv, iB, n), *p.beta);
            std::vector<double> tail(static_cast<std::size_t>(n - iB) + 1);
            for (int i = iB; i <= n; ++i)
                tail[static_cast<std::size_t>(i - iB)] = s1[i - iA] - s2[i - iB];
            right_tail = SampledFunction(restrict_to(zv, iB, n).grid, std::move(tail));
        }
    }

    Grid mid_grid(g.node(iA), g.node(iB), iB - iA);
    mid_grid.h = g.h;
    ResidualReport rep;
    rep.middle = SampledFunction(mid_grid, std::move(middle));
    rep.left_tail = std::move(left_tail);
    rep.right_tail = std::move(right_tail);
    rep.sup_norm_interior = sup_interior(rep.middle);
    return rep;
}

} // namespace

double eval_functional(const IsoProblem& p, Functional which, const SampledFunction& y) {
    if (which == Functional::Constraint && !p.has_constraint())
        throw ProblemError("constraint: functional requested but no constraint present");
    const Expr& integrand = which == Functional::Cost ? p.lagrangian : p.constraint;
    NodeFields nf = derivative_fields(p, integrand, y);
    const SampledFunction f = sample_expr(p, integrand, y, nf);
    const int iA = y.grid.index_of(p.lower_bound());
    const int iB = y.grid.index_of(p.upper_bound());
    return integrate_between(f, iA, iB);
}

ResidualReport el_residual(const IsoProblem& p, const SampledFunction& y) {
    if (p.lower_bound() != p.a || p.upper_bound() != p.b)
        throw GridError("el_residual: requires A = a and B = b (use extended_residuals)");
    return assemble_conditions(p, p.lagrangian, y);
}

ResidualReport iso_residual(const IsoProblem& p, const SampledFunction& y,
                            double lambda0, double lambda) {
    if (!p.has_constraint())
        throw ProblemError("constraint: iso_residual requires a constraint");
    if (p.lower_bound() != p.a || p.upper_bound() != p.b)
        throw GridError("iso_residual: requires A = a and B = b (use extended_residuals)");
    return assemble_conditions(p, augmented(p, lambda0, lambda), y);
}

ExtremalCheck extremal_check(const IsoProblem& p, const SampledFunction& y, double tol) {
    if (!p.has_constraint())
        throw ProblemError("constraint: extremal_check requires a constraint");
    const ResidualReport rep = assemble_conditions(p, p.constraint, y);
    if (tol <= 0.0) {
        NodeFields nf = derivative_fields(p, p.constraint, y);
        double scale = 0.0;
        for (Var w : {Var::Y, Var::U, Var::V}) {
            const Expr d = diff(p.constraint, w);
            if (is_zero_const(d))
                continue;
            const SampledFunction f = sample_expr(p, d, y, nf);
            for (double val : f.values)
                scale = std::max(scale, std::abs(val));
        }
        tol = 1e-3 * (1.0 + scale);
    }
    return ExtremalCheck{rep.sup_norm_interior <= tol, rep.sup_norm_interior, tol};
}

ResidualReport extended_residuals(const IsoProblem& p, const SampledFunction& y,
                                  double lambda0, double lambda) {
    Expr K = p.has_constraint() ? augmented(p, lambda0, lambda)
                                : augmented(p, lambda0, 0.0);
    return assemble_conditions(p, K, y);
}

double ibp_defect(const SampledFunction& f, const SampledFunction& g, double alpha) {
    if (!f.grid.same_as(g.grid))
        throw GridError("ibp_defect: f and g must share a grid");
    const SampledFunction dg = left_rl(g, alpha);
    const SampledFunction df = right_rl(f, alpha);
    std::vector<double> p1(f.values.size()), p2(f.values.size());
    for (int i = 0; i <= f.grid.n; ++i) {
        p1[static_cast<std::size_t>(i)] = f[i] * dg[i];
        p2[static_cast<std::size_t>(i)] = g[i] * df[i];
    }
    return integrate(SampledFunction(f.grid, std::move(p1))) -
           integrate(SampledFunction(f.grid, std::move(p2)));
}

double alpha_stationarity(const IsoProblem& p, const SampledFunction& y, double dalpha) {
    if (!references(p.lagrangian, Var::U))
        throw ProblemError("lagrangian: alpha stationarity requires a u-dependent integrand");
    if (!p.alpha)
        throw ProblemError("alpha: missing order");
    const double al = *p.alpha;
    if (!(dalpha > 0.0) || !(al - dalpha > 0.0) || al + dalpha > 1.0)
        throw DomainError("alpha_stationarity: alpha +/- dalpha must stay inside (0, 1]");

    NodeFields nf = derivative_fields(p, p.lagrangian, y);
    const SampledFunction dLdu = sample_expr(p, diff(p.lagrangian, Var::U), y, nf);
    const SampledFunction up = left_rl(y, al + dalpha);
    const SampledFunction um = left_rl(y, al - dalpha);
    std::vector<double> prod(y.values.size());
    for (int i = 0; i <= y.grid.n; ++i) {
        const double phi_prime = (up[i] - um[i]) / (2.0 * dalpha);
        prod[static_cast<std::size_t>(i)] = dLdu[i] * phi_prime;
    }
    return integrate(SampledFunction(y.grid, std::move(prod)));
}

std::vector<double> discrete_gradient(const IsoProblem& p, Functional which,
                                      const SampledFunction& y) {
    if (which == Functional::Constraint && !p.has_constraint())
        throw ProblemError("constraint: gradient requested but no constraint present");
    const Expr& integrand = which == Functional::Cost ? p.lagrangian : p.constraint;
    const Grid& g = y.grid;
    const int iA = g.index_of(p.lower_bound());
    const int iB = g.index_of(p.upper_bound());
    const std::vector<double> mu = trapezoid_weights(g, iA, iB);

    NodeFields nf = derivative_fields(p, integrand, y);
    std::vector<double> grad(y.values.size(), 0.0);

    const Expr Ly = diff(integrand, Var::Y);
    if (!is_zero_const(Ly)) {
        const SampledFunction f = sample_expr(p, Ly, y, nf);
        for (int i = 0; i <= g.n; ++i)
            grad[static_cast<std::size_t>(i)] += mu[static_cast<std::size_t>(i)] * f[i];
    }
    const Expr Lu = diff(integrand, Var::U);
    if (nf.has_u && !is_zero_const(Lu)) {
        SampledFunction f = sample_expr(p, Lu, y, nf);
        for (int i = 0; i <= g.n; ++i)
            f[i] *= mu[static_cast<std::size_t>(i)];
        const std::vector<double> adj = adjoint_left_rl(f, *p.alpha);
        for (int i = 0; i <= g.n; ++i)
            grad[static_cast<std::size_t>(i)] += adj[static_cast<std::size_t>(i)];
    }
    const Expr Lv = diff(integrand, Var::V);
    if (nf.has_v && !is_zero_const(Lv)) {
        SampledFunction f = sample_expr(p, Lv, y, nf);
        for (int i = 0; i <= g.n; ++i)
            f[i] *= mu[static_cast<std::size_t>(i)];
        const std::vector<double> adj = adjoint_right_rl(f, *p.beta);
        for (int i = 0; i <= g.n; ++i)
            grad[static_cast<std::size_t>(i)] += adj[static_cast<std::size_t>(i)];
    }
    return grad;
}

} // namespace fracvar
