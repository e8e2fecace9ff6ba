#include "fracvar/problem.hpp"
#include "fracvar/errors.hpp"

namespace fracvar {

bool IsoProblem::uses_u() const {
    return (lagrangian && references(lagrangian, Var::U)) ||
           (constraint && references(constraint, Var::U));
}

bool IsoProblem::uses_v() const {
    return (lagrangian && references(lagrangian, Var::V)) ||
           (constraint && references(constraint, Var::V));
}

void IsoProblem::validate() const {
    if (!lagrangian)
        throw ProblemError("lagrangian: missing integrand");
    if (!(a < b))
        throw ProblemError("a, b: requires a < b");
    const double lo = lower_bound();
    const double hi = upper_bound();
    if (!(a <= lo && lo < hi && hi <= b))
        throw ProblemError("A, B: requires a <= A < B <= b");
    if (uses_u()) {
        if (!alpha)
            throw ProblemError("alpha: required because an integrand references u");
        if (!(*alpha > 0.0) || *alpha > 1.0)
            throw ProblemError("alpha: must lie in (0, 1]");
        if (lo == a && y_a != 0.0)
            throw ProblemError(
                "y_a: must be 0 when the left derivative is used and A = a "
                "(the operator is unbounded at the base otherwise)");
    }
    if (uses_v()) {
        if (!beta)
            throw ProblemError("beta: required because an integrand references v");
        if (!(*beta > 0.0) || *beta > 1.0)
            throw ProblemError("beta: must lie in (0, 1]");
        if (hi == b && y_b != 0.0)
            throw ProblemError(
                "y_b: must be 0 when the right derivative is used and B = b");
    }
}

} // namespace fracvar
