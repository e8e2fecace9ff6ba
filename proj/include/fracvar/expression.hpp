#pragma once

#include <memory>
#include <string>

namespace fracvar {

// Variables an integrand may reference.  `u` and `v` stand for the left
// and right fractional derivatives of y; `alpha` exposes the order to
// order-dependent integrands.
enum class Var { X, Y, U, V, Alpha };

enum class UnaryOp { Neg, Sin, Cos, Exp, Ln, Gamma, Digamma };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Constant, Variable, Unary, Binary } kind;
    double value = 0.0; // Constant
    Var var = Var::X;   // Variable
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    Expr lhs, rhs;      // Unary uses lhs only
};

struct Environment {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;
    double alpha = 0.0;
};

// Node builders with constant folding (constants combine; additive and
// multiplicative identities collapse; e^1 -> e).
Expr constant(double v);
Expr variable(Var v);
Expr unary(UnaryOp op, Expr e);
Expr binary(BinaryOp op, Expr a, Expr b);

bool is_zero_const(const Expr& e);

// Grammar: infix + - * / ^ with the usual precedence, parentheses,
// function calls sin/cos/exp/ln/gamma/digamma, numeric literals, and the
// identifiers x, y, u, v, alpha, pi.  '^' binds tightest and associates to
// the right; unary minus binds below '^'.
// Throws ParseError with the offending source position.
Expr parse(const std::string& source);

// Recursive evaluation; throws EvalError on domain violations
// (ln of a non-positive value, gamma of a non-positive value,
// 0 to a negative power, a negative base under a non-integer exponent).
double eval(const Expr& e, const Environment& env);

// Exact symbolic partial derivative with respect to y, u or v.  No
// simplification beyond the builders' constant folding.
Expr diff(const Expr& e, Var var);

// Whether the expression mentions a variable.
bool references(const Expr& e, Var var);

// Render to the expression grammar.  Parsing the result reproduces a
// structurally equal tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

} // namespace fracvar
