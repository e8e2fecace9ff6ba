// Command-line front end: problem files in, CSV tables and diagnostics out.
//
// Subcommands:
//   deriv      sample an expression of x and apply a fractional derivative
//   solve      solve a variational / isoperimetric problem directly
//   check      evaluate residual diagnostics for a solution CSV
//   alpha-opt  locate a stationary order for an order-dependent objective
//
// Exit status: 0 success, 1 usage/parse error, 2 numerical failure.

#include "fracvar/builtins.hpp"
#include "fracvar/csv.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/frac_operators.hpp"
#include "fracvar/problem_file.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

namespace {

using namespace fracvar;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct DerivArgs {
    std::string expr;
    double alpha = 0.5;
    std::string side = "left";
    double a = 0.0, b = 1.0;
    int n = 1024;
    std::string output;
};

int run_deriv(const DerivArgs& args) {
    const Expr e = parse(args.expr);
    for (Var w : {Var::Y, Var::U, Var::V, Var::Alpha})
        if (references(e, w))
            throw ProblemError("deriv: expression may reference x only");
    const Grid g(args.a, args.b, args.n);
    const SampledFunction f = sample(g, [&](double x) {
        Environment env;
        env.x = x;
        return eval(e, env);
    });
    const SampledFunction d = args.side == "left" ? left_rl(f, args.alpha)
                                                  : right_rl(f, args.alpha);
    CsvTable t;
    t.header = {"x", "f", "D"};
    t.columns.resize(3);
    for (int i = 0; i <= g.n; ++i) {
        t.columns[0].push_back(g.node(i));
        t.columns[1].push_back(f[i]);
        t.columns[2].push_back(d[i]);
    }
    write_csv(args.output, t);
    std::cout << "wrote " << (g.n + 1) << " nodes to " << args.output << "\n";
    return 0;
}

struct SolveArgs {
    std::string source;
    std::string output;
    std::optional<double> alpha;
    std::optional<int> n;
};

void print_summary(const SolveResult& r) {
    std::cout << "lambda0 = " << format_double(r.lambda0)
              << ", lambda = " << format_double(r.lambda)
              << ", constraint_gap = " << format_double(r.constraint_gap)
              << ", residual_norm = " << format_double(r.residual_norm)
              << ", iterations = " << r.iterations
              << ", abnormal = " << (r.abnormal ? "true" : "false") << "\n";
}

int run_solve(const SolveArgs& args) {
    LoadedSource src = load_problem_source(args.source, args.alpha, args.n);
    const IsoProblem& p = src.loaded.problem;
    const SolveResult r = p.has_constraint()
                              ? solve_isoperimetric(p, src.loaded.options)
                              : solve_unconstrained(p, src.loaded.options);
    if (!args.output.empty()) {
        CsvTable t;
        t.header = {"x", "y", "u"};
        t.columns.resize(3);
        const SampledFunction u =
            p.alpha ? left_rl(r.y, *p.alpha)
                    : SampledFunction(r.y.grid, std::vector<double>(r.y.values.size(), 0.0));
        for (int i = 0; i <= r.y.grid.n; ++i) {
            t.columns[0].push_back(r.y.grid.node(i));
            t.columns[1].push_back(r.y[i]);
            t.columns[2].push_back(u[i]);
        }
        write_csv(args.output, t);
    }
    print_summary(r);
    return 0;
}

struct CheckArgs {
    std::string source;
    std::string csv;
    double lambda0 = 1.0;
    double lambda = 0.0;
    std::optional<double> alpha;
    std::optional<int> n;
};

int run_check(const CheckArgs& args) {
    LoadedSource src = load_problem_source(args.source, args.alpha, args.n);
    const IsoProblem& p = src.loaded.problem;

    const CsvTable t = read_csv(args.csv);
    if (t.header.size() < 2 || t.header[0] != "x" || t.header[1] != "y")
        throw ProblemError("check: solution CSV must start with columns x,y");
    const int rows = static_cast<int>(t.rows());
    if (rows < 3)
        throw GridError("check: too few rows for a grid");
    const Grid g(p.a, p.b, rows - 1);
    for (int i = 0; i < rows; ++i)
        if (std::abs(t.columns[0][static_cast<std::size_t>(i)] - g.node(i)) >
            1e-9 * (1.0 + std::abs(g.node(i))))
            throw GridError("check: CSV nodes disagree with the problem grid");
    SampledFunction y(g, t.columns[1]);

    std::cout << "grid: n = " << g.n << " on [" << format_double(p.a) << ", "
              << format_double(p.b) << "]\n";

    if (p.has_constraint()) {
        const ExtremalCheck ec = extremal_check(p, y);
        std::cout << "extremal_of_constraint: " << (ec.is_extremal ? "true" : "false")
                  << " (norm = " << format_double(ec.norm)
                  << ", tol = " << format_double(ec.tolerance) << ")\n";
    }

    const bool extended = p.A.has_value() || p.B.has_value();
    const ResidualReport rep = extended
                                   ? extended_residuals(p, y, args.lambda0, args.lambda)
                                   : (p.has_constraint()
                                          ? iso_residual(p, y, args.lambda0, args.lambda)
                                          : el_residual(p, y));
    const char* label = p.has_constraint() ? "iso_residual" : "el_residual";
    std::cout << label << "(lambda0 = " << format_double(args.lambda0)
              << ", lambda = " << format_double(args.lambda)
              << "): sup_interior = " << format_double(rep.sup_norm_interior) << "\n";
    if (extended) {
        if (rep.left_tail)
            std::cout << "left_tail[" << format_double(p.a) << ", "
                      << format_double(p.lower_bound())
                      << "]: sup = " << format_double(sup_interior(*rep.left_tail)) << "\n";
        else
            std::cout << "left_tail: absent\n";
        if (rep.right_tail)
            std::cout << "right_tail[" << format_double(p.upper_bound()) << ", "
                      << format_double(p.b)
                      << "]: sup = " << format_double(sup_interior(*rep.right_tail)) << "\n";
        else
            std::cout << "right_tail: absent\n";
    }

    // The quantity the direct solver drives to zero.
    {
        std::vector<double> gJ = discrete_gradient(p, Functional::Cost, y);
        if (p.has_constraint()) {
            const std::vector<double> gI = discrete_gradient(p, Functional::Constraint, y);
            for (std::size_t i = 0; i < gJ.size(); ++i)
                gJ[i] = args.lambda0 * gJ[i] - args.lambda * gI[i];
        }
        std::cout << "kkt_gradient: sup = "
                  << format_double(sup_excluding_ends(gJ, 1)) << "\n";
    }

    if (references(p.lagrangian, Var::U) && p.alpha && *p.alpha - 1e-4 > 0.0 &&
        *p.alpha + 1e-4 <= 1.0) {
        std::cout << "alpha_stationarity(dalpha = 0.0001) = "
                  << format_double(alpha_stationarity(p, y, 1e-4)) << "\n";
    } else {
        std::cout << "alpha_stationarity: skipped (order at the boundary or no u)\n";
    }
    return 0;
}

struct AlphaOptArgs {
    std::string source;
    double lo = 0.5;
    double hi = 1.0;
    std::string output;
    std::optional<int> n;
    std::optional<double> sweep_lo;
    std::optional<double> sweep_hi;
    int sweep_samples = 101;
};

int run_alpha_opt(const AlphaOptArgs& args) {
    LoadedSource src = load_problem_source(args.source, std::nullopt, args.n);
    std::function<double(double)> objective;
    if (src.alpha_objective) {
        const int quad_n = args.n.value_or(4096);
        objective = [obj = src.alpha_objective, quad_n](double al) { return obj(al, quad_n); };
    } else {
        objective = solver_alpha_objective(src.loaded.problem, src.loaded.options);
    }

    const auto [alpha_star, value] = optimize_alpha(objective, args.lo, args.hi);

    if (!args.output.empty()) {
        const double lo = args.sweep_lo.value_or(args.lo);
        const double hi = args.sweep_hi.value_or(args.hi);
        CsvTable t;
        t.header = {"alpha", "objective"};
        t.columns.resize(2);
        for (int i = 0; i < args.sweep_samples; ++i) {
            const double al = lo + (hi - lo) * i / (args.sweep_samples - 1.0);
            t.columns[0].push_back(al);
            t.columns[1].push_back(objective(al));
        }
        write_csv(args.output, t);
    }
    std::cout << "alpha_star = " << format_double(alpha_star)
              << ", objective = " << format_double(value) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional variational problems: derivatives, direct solves, diagnostics"};
    app.require_subcommand(1);

    DerivArgs deriv;
    auto* cmd_deriv = app.add_subcommand("deriv", "fractional derivative of an expression of x");
    cmd_deriv->add_option("expr", deriv.expr, "integrand, e.g. \"x^2\"")->required();
    cmd_deriv->add_option("--alpha", deriv.alpha, "order in (0,1]");
    cmd_deriv->add_option("--side", deriv.side, "left|right")
        ->check(CLI::IsMember({"left", "right"}));
    cmd_deriv->add_option("--a", deriv.a, "interval start");
    cmd_deriv->add_option("--b", deriv.b, "interval end");
    cmd_deriv->add_option("--n", deriv.n, "grid intervals");
    cmd_deriv->add_option("--output", deriv.output, "CSV path")->required();

    SolveArgs solve;
    auto* cmd_solve = app.add_subcommand("solve", "direct solve of a problem file or builtin");
    cmd_solve->add_option("problem", solve.source, "path or builtin:eq_ex / builtin:psi")
        ->required();
    cmd_solve->add_option("--output", solve.output, "solution CSV path (columns x,y,u)");
    double solve_alpha = 0.0;
    auto* sa = cmd_solve->add_option("--alpha", solve_alpha, "override the order");
    int solve_n = 0;
    auto* sn = cmd_solve->add_option("--n", solve_n, "override the grid intervals");

    CheckArgs check;
    auto* cmd_check = app.add_subcommand("check", "residual diagnostics for a solution CSV");
    cmd_check->add_option("problem", check.source, "path or builtin token")->required();
    cmd_check->add_option("solution", check.csv, "CSV with columns x,y[,u]")->required();
    cmd_check->add_option("--lambda0", check.lambda0, "cost multiplier (default 1)");
    cmd_check->add_option("--lambda", check.lambda, "constraint multiplier (default 0)");
    double check_alpha = 0.0;
    auto* ca = cmd_check->add_option("--alpha", check_alpha, "override the order");
    int check_n = 0;
    auto* cn = cmd_check->add_option("--n", check_n, "override the grid intervals");

    AlphaOptArgs aopt;
    auto* cmd_aopt = app.add_subcommand("alpha-opt", "stationary order of an objective");
    cmd_aopt->add_option("problem", aopt.source, "path or builtin token")->required();
    cmd_aopt->add_option("--bracket-lo", aopt.lo, "bracket lower end")->required();
    cmd_aopt->add_option("--bracket-hi", aopt.hi, "bracket upper end")->required();
    cmd_aopt->add_option("--output", aopt.output, "sweep CSV path (columns alpha,objective)");
    int aopt_n = 0;
    auto* an = cmd_aopt->add_option("--n", aopt_n, "quadrature / solve grid intervals");
    double sweep_lo = 0.0, sweep_hi = 0.0;
    auto* slo = cmd_aopt->add_option("--sweep-lo", sweep_lo, "sweep start (default bracket-lo)");
    auto* shi = cmd_aopt->add_option("--sweep-hi", sweep_hi, "sweep end (default bracket-hi)");
    cmd_aopt->add_option("--sweep-samples", aopt.sweep_samples, "sweep sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : 0;
    }

    try {
        if (*cmd_deriv)
            return run_deriv(deriv);
        if (*cmd_solve) {
            if (*sa) solve.alpha = solve_alpha;
            if (*sn) solve.n = solve_n;
            return run_solve(solve);
        }
        if (*cmd_check) {
            if (*ca) check.alpha = check_alpha;
            if (*cn) check.n = check_n;
            return run_check(check);
        }
        if (*cmd_aopt) {
            if (*an) aopt.n = aopt_n;
            if (*slo) aopt.sweep_lo = sweep_lo;
            if (*shi) aopt.sweep_hi = sweep_hi;
            return run_alpha_opt(aopt);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ProblemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NonConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        print_summary(e.last);
        return kExitNumerical;
    } catch (const InfeasibleError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        print_summary(e.last);
        return kExitNumerical;
    } catch (const NoStationaryPointError& e) {
        std::cerr << "numerical failure: no stationary point in bracket: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
