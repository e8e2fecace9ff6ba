#include "fracvar/problem_file.hpp"
#include "fracvar/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace fracvar {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_real(const std::string& key, const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ProblemError(key + ": malformed number '" + s + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& s) {
    const double v = parse_real(key, s);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ProblemError(key + ": expected an integer, got '" + s + "'");
    return i;
}

} // namespace

LoadedProblem parse_problem_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ProblemError("line " + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ProblemError("line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            throw ProblemError(key + ": duplicate key");
        kv[key] = value;
    }

    LoadedProblem lp;
    bool has_level = false;
    for (const auto& [key, value] : kv) {
        try {
            if (key == "lagrangian")
                lp.problem.lagrangian = parse(unquote(value));
            else if (key == "constraint")
                lp.problem.constraint = parse(unquote(value));
            else if (key == "level") {
                lp.problem.level = parse_real(key, value);
                has_level = true;
            } else if (key == "alpha")
                lp.problem.alpha = parse_real(key, value);
            else if (key == "beta")
                lp.problem.beta = parse_real(key, value);
            else if (key == "a")
                lp.problem.a = parse_real(key, value);
            else if (key == "b")
                lp.problem.b = parse_real(key, value);
            else if (key == "A")
                lp.problem.A = parse_real(key, value);
            else if (key == "B")
                lp.problem.B = parse_real(key, value);
            else if (key == "y_a")
                lp.problem.y_a = parse_real(key, value);
            else if (key == "y_b")
                lp.problem.y_b = parse_real(key, value);
            else if (key == "n")
                lp.options.n = parse_int(key, value);
            else if (key == "max_iterations")
                lp.options.max_iterations = parse_int(key, value);
            else if (key == "kkt_tolerance")
                lp.options.kkt_tolerance = parse_real(key, value);
            else if (key == "abnormal_gradient_tolerance")
                lp.options.abnormal_gradient_tolerance = parse_real(key, value);
            else
                throw ProblemError(key + ": unknown key");
        } catch (const ParseError& pe) {
            throw ProblemError(key + ": " + pe.what());
        }
    }
    if (!lp.problem.lagrangian)
        throw ProblemError("lagrangian: missing key");
    if (lp.problem.has_constraint() && !has_level)
        throw ProblemError("level: required when a constraint is present");
    if (has_level && !lp.problem.has_constraint())
        throw ProblemError("constraint: required when level is present");
    lp.problem.validate();
    lp.options.validate();
    return lp;
}

LoadedProblem load_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ProblemError("cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

LoadedSource load_problem_source(const std::string& path_or_builtin,
                                 std::optional<double> alpha_override,
                                 std::optional<int> n_override) {
    LoadedSource src;
    if (path_or_builtin.rfind("builtin:", 0) == 0) {
        BuiltinProblem bp = builtin_by_name(path_or_builtin, alpha_override, n_override);
        src.loaded.problem = bp.problem;
        src.loaded.options = bp.options;
        src.analytic_solution = bp.analytic_solution;
        src.alpha_objective = bp.alpha_objective;
        src.is_builtin = true;
        return src;
    }
    src.loaded = load_problem_file(path_or_builtin);
    if (alpha_override)
        src.loaded.problem.alpha = *alpha_override;
    if (n_override)
        src.loaded.options.n = *n_override;
    src.loaded.problem.validate();
    src.loaded.options.validate();
    return src;
}

} // namespace fracvar
