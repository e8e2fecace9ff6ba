#pragma once

#include "fracvar/expression.hpp"
#include "fracvar/grid.hpp"

#include <optional>

namespace fracvar {

// A variational problem statement: cost integrand L(x, y, u, v), an
// optional integral constraint g = level, fractional orders, interval
// data and boundary values.  `u` abbreviates the left derivative of order
// alpha based at `a`; `v` the right derivative of order beta based at `b`.
// The functionals integrate over [A, B] which defaults to [a, b].
struct IsoProblem {
    Expr lagrangian;
    Expr constraint;               // null when unconstrained
    double level = 0.0;            // paired with constraint
    std::optional<double> alpha;   // required when L or g references u
    std::optional<double> beta;    // required when L or g references v
    double a = 0.0;
    double b = 1.0;
    std::optional<double> A;       // integration bounds; default a, b
    std::optional<double> B;
    double y_a = 0.0;
    double y_b = 0.0;

    bool has_constraint() const { return constraint != nullptr; }
    bool uses_u() const;
    bool uses_v() const;
    double lower_bound() const { return A.value_or(a); }
    double upper_bound() const { return B.value_or(b); }

    // Checks the structural invariants; throws ProblemError naming the
    // offending field.  A left derivative whose base coincides with the
    // integration lower bound forces y_a = 0 (the operator is unbounded at
    // the base otherwise); mirrored for the right derivative at b.
    void validate() const;
};

// Residual fields for the necessary optimality conditions.  `middle`
// carries the Euler-Lagrange field on [A, B]; the tails carry the
// additional conditions on [a, A] and [B, b] for subinterval functionals.
// A tail is absent when its interval is empty or the integrand does not
// reference the matching derivative.  sup_norm_interior is the sup of the
// middle field excluding 2 nodes at each end (operator fill convention).
struct ResidualReport {
    SampledFunction middle;
    std::optional<SampledFunction> left_tail;
    std::optional<SampledFunction> right_tail;
    double sup_norm_interior = 0.0;
};

} // namespace fracvar
