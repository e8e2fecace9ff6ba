#pragma once

#include "fracvar/builtins.hpp"

#include <string>

namespace fracvar {

// Flat key-value problem files:
//
//   # cost and constraint integrands are expressions over x, y, u, v, alpha
//   lagrangian = "x^4 + u^2"
//   constraint = "x^2*u"        # optional, requires level
//   level = 0.2
//   alpha = 0.5                 # required when u is used
//   beta = 0.5                  # required when v is used
//   a = 0
//   b = 1
//   A = 0.25                    # optional integration bounds
//   B = 0.75
//   y_a = 0
//   y_b = 0.6018
//   n = 1024
//   max_iterations = 100
//   kkt_tolerance = 1e-9
//   abnormal_gradient_tolerance = 1e-8
//
// Parse failures and invariant violations throw ProblemError naming the key.
struct LoadedProblem {
    IsoProblem problem;
    SolverOptions options;
};

LoadedProblem parse_problem_text(const std::string& text);
LoadedProblem load_problem_file(const std::string& path);

// Accepts either a file path or a builtin token ("builtin:eq_ex",
// "builtin:psi"); alpha/n override the defaults for builtins and, when
// given, the file values.
struct LoadedSource {
    LoadedProblem loaded;
    // Extras available for builtins only.
    std::function<SampledFunction(const Grid&)> analytic_solution;
    std::function<double(double, int)> alpha_objective;
    bool is_builtin = false;
};

LoadedSource load_problem_source(const std::string& path_or_builtin,
                                 std::optional<double> alpha_override,
                                 std::optional<int> n_override);

} // namespace fracvar
