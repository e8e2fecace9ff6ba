#include "fracvar/solver.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/frac_operators.hpp"
#include "fracvar/special_functions.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace fracvar {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd left_op_matrix(const Grid& g, double alpha) {
    const int n = g.n;
    const auto w = gl_weights(alpha, n).weights;
    const double ha = std::pow(g.h, alpha);
    MatrixXd D = MatrixXd::Zero(n + 1, n + 1);
    for (int i = 1; i <= n; ++i)
        for (int k = 0; k <= i; ++k)
            D(i, i - k) = w[static_cast<std::size_t>(k)] / ha;
    D.row(0) = D.row(1);
    return D;
}

MatrixXd right_op_matrix(const Grid& g, double alpha) {
    const int n = g.n;
    const auto w = gl_weights(alpha, n).weights;
    const double ha = std::pow(g.h, alpha);
    MatrixXd D = MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= n - i; ++k)
            D(i, i + k) = w[static_cast<std::size_t>(k)] / ha;
    D.row(n) = D.row(n - 1);
    return D;
}

// Second partials of an integrand, kept as expressions; null when
// structurally zero.
struct SecondPartials {
    Expr yy, yu, yv, uu, uv, vv;
};

Expr second(const Expr& e, Var w1, Var w2) {
    Expr d = diff(diff(e, w1), w2);
    return is_zero_const(d) ? nullptr : d;
}

SecondPartials second_partials(const Expr& e) {
    SecondPartials s;
    s.yy = second(e, Var::Y, Var::Y);
    s.yu = second(e, Var::Y, Var::U);
    s.yv = second(e, Var::Y, Var::V);
    s.uu = second(e, Var::U, Var::U);
    s.uv = second(e, Var::U, Var::V);
    s.vv = second(e, Var::V, Var::V);
    return s;
}

struct DiscreteProblem {
    const IsoProblem& p;
    Grid grid;
    std::vector<double> mu;   // trapezoid weights on [A, B]
    MatrixXd DL;              // empty when u unused
    MatrixXd DR;
    bool has_u = false;
    bool has_v = false;
    SecondPartials cost2;
    SecondPartials cons2;

    DiscreteProblem(const IsoProblem& prob, int n) : p(prob), grid(prob.a, prob.b, n) {
        const int iA = grid.index_of(p.lower_bound());
        const int iB = grid.index_of(p.upper_bound());
        mu = trapezoid_weights(grid, iA, iB);
        has_u = p.uses_u();
        has_v = p.uses_v();
        if (has_u)
            DL = left_op_matrix(grid, *p.alpha);
        if (has_v)
            DR = right_op_matrix(grid, *p.beta);
        cost2 = second_partials(p.lagrangian);
        if (p.has_constraint())
            cons2 = second_partials(p.constraint);
    }

    SampledFunction make_y(const VectorXd& full) const {
        std::vector<double> v(full.data(), full.data() + full.size());
        return SampledFunction(grid, std::move(v));
    }

    double functional(Functional which, const VectorXd& full) const {
        return eval_functional(p, which, make_y(full));
    }

    // Interior components of the exact discrete gradient.
    VectorXd gradient(Functional which, const VectorXd& full) const {
        const std::vector<double> g = discrete_gradient(p, which, make_y(full));
        VectorXd gi(grid.n - 1);
        for (int j = 1; j < grid.n; ++j)
            gi(j - 1) = g[static_cast<std::size_t>(j)];
        return gi;
    }

    // Interior block of the Hessian of the discretized functional.
    MatrixXd hessian(Functional which, const VectorXd& full) const {
        const int n = grid.n;
        const SampledFunction y = make_y(full);
        const Expr& integrand = which == Functional::Cost ? p.lagrangian : p.constraint;
        const SecondPartials& sp = which == Functional::Cost ? cost2 : cons2;

        SampledFunction u = has_u && references(integrand, Var::U)
                                ? left_rl(y, *p.alpha)
                                : SampledFunction(grid, std::vector<double>(y.values.size(), 0.0));
        SampledFunction v = has_v && references(integrand, Var::V)
                                ? right_rl(y, *p.beta)
                                : SampledFunction(grid, std::vector<double>(y.values.size(), 0.0));

        auto weight = [&](const Expr& e) {
            VectorXd wv(n + 1);
            for (int i = 0; i <= n; ++i) {
                Environment env{grid.node(i), y[i], u[i], v[i], p.alpha.value_or(0.0)};
                wv(i) = mu[static_cast<std::size_t>(i)] * eval(e, env);
            }
            return wv;
        };

        MatrixXd H = MatrixXd::Zero(n + 1, n + 1);
        if (sp.yy)
            H += weight(sp.yy).asDiagonal();
        if (sp.uu)
            H += DL.transpose() * weight(sp.uu).asDiagonal() * DL;
        if (sp.vv)
            H += DR.transpose() * weight(sp.vv).asDiagonal() * DR;
        if (sp.yu) {
            const MatrixXd M = weight(sp.yu).asDiagonal() * DL;
            H += M + M.transpose();
        }
        if (sp.yv) {
            const MatrixXd M = weight(sp.yv).asDiagonal() * DR;
            H += M + M.transpose();
        }
        if (sp.uv) {
            const MatrixXd M = DL.transpose() * weight(sp.uv).asDiagonal() * DR;
            H += M + M.transpose();
        }
        return H.block(1, 1, n - 1, n - 1);
    }

    VectorXd initial(const SolverOptions& opts) const {
        const int n = grid.n;
        VectorXd y(n + 1);
        if (opts.initial_guess) {
            if (static_cast<int>(opts.initial_guess->size()) != n + 1)
                throw ProblemError("initial_guess: expected n + 1 node values");
            for (int i = 0; i <= n; ++i)
                y(i) = (*opts.initial_guess)[static_cast<std::size_t>(i)];
        } else {
            for (int i = 0; i <= n; ++i)
                y(i) = p.y_a + (p.y_b - p.y_a) * (grid.node(i) - p.a) / (p.b - p.a);
        }
        y(0) = p.y_a;
        y(n) = p.y_b;
        return y;
    }
};

VectorXd solve_linear(MatrixXd M, VectorXd rhs) {
    Eigen::PartialPivLU<MatrixXd> lu(M);
    VectorXd s = lu.solve(rhs);
    if (!s.allFinite()) {
        // Singular or nearly singular system: Levenberg shift.
        const double tau = 1e-10 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
        M.diagonal().array() += tau;
        s = M.partialPivLu().solve(rhs);
        if (!s.allFinite())
            throw std::runtime_error("linear solve produced non-finite values");
    }
    return s;
}

SolveResult make_result(const DiscreteProblem& dp, const VectorXd& yfull, double lambda0,
                        double lambda, double resid, int iters, bool abnormal) {
    SolveResult r;
    r.y = dp.make_y(yfull);
    r.lambda0 = lambda0;
    r.lambda = lambda;
    r.constraint_gap =
        dp.p.has_constraint() ? dp.functional(Functional::Constraint, yfull) - dp.p.level : 0.0;
    r.residual_norm = resid;
    r.iterations = iters;
    r.abnormal = abnormal;
    return r;
}

} // namespace

void SolverOptions::validate() const {
    if (n < 16)
        throw ProblemError("n: solver grid requires n >= 16");
    if (max_iterations < 1)
        throw ProblemError("max_iterations: must be positive");
    if (!(kkt_tolerance > 0.0) || !(abnormal_gradient_tolerance > 0.0))
        throw ProblemError("tolerances: must be positive");
}

SolveResult solve_unconstrained(const IsoProblem& p, const SolverOptions& opts) {
    p.validate();
    opts.validate();
    DiscreteProblem dp(p, opts.n);
    VectorXd y = dp.initial(opts);

    double gnorm = 0.0;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        VectorXd g = dp.gradient(Functional::Cost, y);
        gnorm = g.lpNorm<Eigen::Infinity>();
        if (gnorm <= opts.kkt_tolerance)
            return make_result(dp, y, 1.0, 0.0, gnorm, it, false);

        MatrixXd H = dp.hessian(Functional::Cost, y);
        VectorXd step = solve_linear(H, -g);

        // Backtrack on the gradient norm; accepts stationary points of any
        // type, which is what the necessary conditions describe.
        double t = 1.0;
        VectorXd ytry = y;
        for (int ls = 0; ls < 40; ++ls) {
            ytry = y;
            ytry.segment(1, dp.grid.n - 1) += t * step;
            const double gn = dp.gradient(Functional::Cost, ytry).lpNorm<Eigen::Infinity>();
            if (gn < gnorm * (1.0 - 1e-4 * t) || t < 1e-10)
                break;
            t *= 0.5;
        }
        y = ytry;
    }
    throw NonConvergenceError("solve_unconstrained: no convergence after " +
                                  std::to_string(opts.max_iterations) + " iterations",
                              make_result(dp, y, 1.0, 0.0, gnorm, it, false));
}

namespace {

// Re-solve with lambda0 = 0: stationarity of the constraint alone.
SolveResult solve_abnormal(const DiscreteProblem& dp, VectorXd y, const SolverOptions& opts,
                           int iters_so_far) {
    const IsoProblem& p = dp.p;
    double gnorm = 0.0;
    int it = iters_so_far;
    for (int k = 0; k < opts.max_iterations; ++k, ++it) {
        VectorXd g = dp.gradient(Functional::Constraint, y);
        gnorm = g.lpNorm<Eigen::Infinity>();
        if (gnorm <= opts.kkt_tolerance)
            break;
        MatrixXd H = dp.hessian(Functional::Constraint, y);
        VectorXd step = solve_linear(H, -g);
        y.segment(1, dp.grid.n - 1) += step;
    }
    SolveResult r = make_result(dp, y, 0.0, 1.0, gnorm, it, true);
    const double feas_tol = std::max(opts.kkt_tolerance, 1e-9) * (1.0 + std::abs(p.level));
    if (std::abs(r.constraint_gap) > std::max(feas_tol, 1e-7 * (1.0 + std::abs(p.level))))
        throw InfeasibleError("solve_isoperimetric: abnormal system cannot meet the "
                              "constraint level",
                              r);
    return r;
}

} // namespace

SolveResult solve_isoperimetric(const IsoProblem& p, const SolverOptions& opts) {
    p.validate();
    opts.validate();
    if (!p.has_constraint())
        throw ProblemError("constraint: solve_isoperimetric requires one (use solve_unconstrained)");
    DiscreteProblem dp(p, opts.n);
    VectorXd y = dp.initial(opts);
    double lambda = 0.0;

    const int ni = dp.grid.n - 1;
    double kkt = 0.0;
    double best_gap = std::abs(dp.functional(Functional::Constraint, y) - p.level);
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        const VectorXd gJ = dp.gradient(Functional::Cost, y);
        const VectorXd gI = dp.gradient(Functional::Constraint, y);
        const double gap = dp.functional(Functional::Constraint, y) - p.level;
        best_gap = std::min(best_gap, std::abs(gap));

        const VectorXd r1 = gJ - lambda * gI;
        kkt = std::max(r1.lpNorm<Eigen::Infinity>() / (1.0 + std::abs(lambda)),
                       std::abs(gap) / (1.0 + std::abs(p.level)));
        const double gI_norm = gI.lpNorm<Eigen::Infinity>();
        const double abn_scale =
            1.0 + std::abs(p.level) + std::abs(dp.functional(Functional::Constraint, y));

        if (gI_norm < opts.abnormal_gradient_tolerance * abn_scale) {
            // The multiplier rule degenerates: lambda0 must vanish.
            return solve_abnormal(dp, y, opts, it);
        }
        if (kkt <= opts.kkt_tolerance)
            return make_result(dp, y, 1.0, lambda, r1.lpNorm<Eigen::Infinity>(), it, false);

        MatrixXd H = dp.hessian(Functional::Cost, y);
        if (p.has_constraint() && (dp.cons2.yy || dp.cons2.uu || dp.cons2.vv || dp.cons2.yu ||
                                   dp.cons2.yv || dp.cons2.uv))
            H -= lambda * dp.hessian(Functional::Constraint, y);

        MatrixXd M = MatrixXd::Zero(ni + 1, ni + 1);
        M.topLeftCorner(ni, ni) = H;
        M.topRightCorner(ni, 1) = -gI;
        M.bottomLeftCorner(1, ni) = gI.transpose();
        VectorXd rhs(ni + 1);
        rhs.head(ni) = -r1;
        rhs(ni) = -gap;

        VectorXd step = solve_linear(M, rhs);

        auto merit = [&](const VectorXd& yf, double lm) {
            const VectorXd r = dp.gradient(Functional::Cost, yf) -
                               lm * dp.gradient(Functional::Constraint, yf);
            const double gp = dp.functional(Functional::Constraint, yf) - p.level;
            return std::sqrt(r.squaredNorm() + gp * gp);
        };
        const double m0 = merit(y, lambda);
        double t = 1.0;
        VectorXd ytry = y;
        double ltry = lambda;
        for (int ls = 0; ls < 40; ++ls) {
            ytry = y;
            ytry.segment(1, ni) += t * step.head(ni);
            ltry = lambda + t * step(ni);
            if (merit(ytry, ltry) < m0 * (1.0 - 1e-4 * t) || t < 1e-10)
                break;
            t *= 0.5;
        }
        y = ytry;
        lambda = ltry;
    }

    SolveResult last = make_result(dp, y, 1.0, lambda, kkt, it, false);
    if (best_gap > 1e-6 * (1.0 + std::abs(p.level)))
        throw InfeasibleError("solve_isoperimetric: could not reduce the constraint gap", last);
    throw NonConvergenceError("solve_isoperimetric: no convergence after " +
                                  std::to_string(opts.max_iterations) + " iterations",
                              last);
}

std::pair<double, double> optimize_alpha(const std::function<double(double)>& objective,
                                         double lo, double hi, double deriv_step,
                                         double deriv_tolerance) {
    if (!(0.0 < lo) || !(lo < hi) || hi > 1.0 + 1e-12)
        throw DomainError("optimize_alpha: bracket must satisfy 0 < lo < hi <= 1");

    auto dphi = [&](double al) {
        double lo_pt = al - deriv_step;
        double hi_pt = al + deriv_step;
        // One-sided difference when the stencil would leave (0, 1].
        if (lo_pt <= 0.0)
            lo_pt = al;
        if (hi_pt > 1.0)
            hi_pt = al;
        if (lo_pt == hi_pt)
            throw DomainError("optimize_alpha: derivative stencil collapsed");
        return (objective(hi_pt) - objective(lo_pt)) / (hi_pt - lo_pt);
    };

    double flo = dphi(lo);
    double fhi = dphi(hi);
    if (std::abs(flo) <= deriv_tolerance)
        return {lo, objective(lo)};
    if (std::abs(fhi) <= deriv_tolerance)
        return {hi, objective(hi)};
    if (flo * fhi > 0.0)
        throw NoStationaryPointError(
            "optimize_alpha: objective derivative does not change sign on the bracket");

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = dphi(mid);
        if (std::abs(fm) <= deriv_tolerance || hi - lo < 1e-13)
            break;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {mid, objective(mid)};
}

std::function<double(double)> solver_alpha_objective(IsoProblem p, SolverOptions opts) {
    return [p, opts](double alpha) {
        IsoProblem q = p;
        q.alpha = alpha;
        const SolveResult r = solve_unconstrained(q, opts);
        return eval_functional(q, Functional::Cost, r.y);
    };
}

SystemCheck stationarity_system_check(const IsoProblem& p, const SampledFunction& y,
                                      double alpha, double dalpha) {
    IsoProblem q = p;
    q.alpha = alpha;
    const ResidualReport rep = el_residual(q, y);
    SystemCheck out;
    out.el_norm = rep.sup_norm_interior;
    out.alpha_residual = alpha_stationarity(q, y, dalpha);
    return out;
}

} // namespace fracvar
