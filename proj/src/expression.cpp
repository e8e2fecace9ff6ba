#include "fracvar/expression.hpp"
#include "fracvar/errors.hpp"
#include "fracvar/special_functions.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>

namespace fracvar {

namespace {

Expr make_node(ExprNode n) {
    return std::make_shared<const ExprNode>(std::move(n));
}

bool is_const(const Expr& e, double v) {
    return e->kind == ExprNode::Kind::Constant && e->value == v;
}

double apply_unary(UnaryOp op, double a) {
    switch (op) {
        case UnaryOp::Neg: return -a;
        case UnaryOp::Sin: return std::sin(a);
        case UnaryOp::Cos: return std::cos(a);
        case UnaryOp::Exp: return std::exp(a);
        case UnaryOp::Ln:
            if (!(a > 0.0)) throw EvalError("ln of a non-positive value");
            return std::log(a);
        case UnaryOp::Gamma:
            if (!(a > 0.0)) throw EvalError("gamma of a non-positive value");
            return gamma_fn(a);
        case UnaryOp::Digamma:
            if (!(a > 0.0)) throw EvalError("digamma of a non-positive value");
            return digamma(a);
    }
    throw EvalError("unknown unary operator");
}

double apply_pow(double a, double b) {
    if (a == 0.0 && b < 0.0)
        throw EvalError("zero raised to a negative power");
    if (a < 0.0 && b != std::floor(b))
        throw EvalError("negative base under a non-integer exponent");
    return std::pow(a, b);
}

double apply_binary(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
            if (b == 0.0) throw EvalError("division by zero");
            return a / b;
        case BinaryOp::Pow: return apply_pow(a, b);
    }
    throw EvalError("unknown binary operator");
}

bool foldable_unary(UnaryOp op, double a) {
    switch (op) {
        case UnaryOp::Neg: return true;
        case UnaryOp::Sin:
        case UnaryOp::Cos:
        case UnaryOp::Exp: return true;
        case UnaryOp::Ln:
        case UnaryOp::Gamma:
        case UnaryOp::Digamma: return a > 0.0;
    }
    return false;
}

} // namespace

Expr constant(double v) {
    ExprNode n;
    n.kind = ExprNode::Kind::Constant;
    n.value = v;
    return make_node(std::move(n));
}

Expr variable(Var v) {
    ExprNode n;
    n.kind = ExprNode::Kind::Variable;
    n.var = v;
    return make_node(std::move(n));
}

Expr unary(UnaryOp op, Expr e) {
    if (e->kind == ExprNode::Kind::Constant && foldable_unary(op, e->value))
        return constant(apply_unary(op, e->value));
    if (op == UnaryOp::Neg && e->kind == ExprNode::Kind::Unary && e->uop == UnaryOp::Neg)
        return e->lhs; // --e
    ExprNode n;
    n.kind = ExprNode::Kind::Unary;
    n.uop = op;
    n.lhs = std::move(e);
    return make_node(std::move(n));
}

Expr binary(BinaryOp op, Expr a, Expr b) {
    const bool ca = a->kind == ExprNode::Kind::Constant;
    const bool cb = b->kind == ExprNode::Kind::Constant;
    if (ca && cb) {
        // Fold when the arithmetic is defined; otherwise keep the node so
        // evaluation reports the error.
        try {
            return constant(apply_binary(op, a->value, b->value));
        } catch (const EvalError&) {
        }
    }
    switch (op) {
        case BinaryOp::Add:
            if (is_const(a, 0.0)) return b;
            if (is_const(b, 0.0)) return a;
            break;
        case BinaryOp::Sub:
            if (is_const(b, 0.0)) return a;
            if (is_const(a, 0.0)) return unary(UnaryOp::Neg, b);
            break;
        case BinaryOp::Mul:
            if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
            if (is_const(a, 1.0)) return b;
            if (is_const(b, 1.0)) return a;
            break;
        case BinaryOp::Div:
            if (is_const(a, 0.0)) return constant(0.0);
            if (is_const(b, 1.0)) return a;
            break;
        case BinaryOp::Pow:
            if (is_const(b, 1.0)) return a;
            if (is_const(b, 0.0)) return constant(1.0);
            break;
    }
    ExprNode n;
    n.kind = ExprNode::Kind::Binary;
    n.bop = op;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return make_node(std::move(n));
}

bool is_zero_const(const Expr& e) {
    return is_const(e, 0.0);
}

// ---------------------------------------------------------------------------
// Parser: recursive descent.
//   expr   := term  (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := primary ('^' factor)?          (right associative)
//   primary:= number | ident | ident '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, pos);
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (consume('+'))
                e = binary(BinaryOp::Add, e, parse_term());
            else if (consume('-'))
                e = binary(BinaryOp::Sub, e, parse_term());
            else
                return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (consume('*'))
                e = binary(BinaryOp::Mul, e, parse_factor());
            else if (consume('/'))
                e = binary(BinaryOp::Div, e, parse_factor());
            else
                return e;
        }
    }

    Expr parse_factor() {
        if (consume('-'))
            return unary(UnaryOp::Neg, parse_factor());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (consume('^'))
            return binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    Expr parse_primary() {
        skip_ws();
        if (pos >= src.size())
            fail("unexpected end of expression");
        const char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_ident();
        if (c == '(') {
            ++pos;
            Expr e = parse_expr();
            if (!consume(')'))
                fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        const char* begin = src.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin)
            fail("malformed number");
        pos += static_cast<std::size_t>(end - begin);
        return constant(v);
    }

    Expr parse_ident() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        const std::string name = src.substr(start, pos - start);

        static const std::map<std::string, Var> vars = {
            {"x", Var::X}, {"y", Var::Y}, {"u", Var::U}, {"v", Var::V}, {"alpha", Var::Alpha}};
        static const std::map<std::string, UnaryOp> funcs = {
            {"sin", UnaryOp::Sin},     {"cos", UnaryOp::Cos}, {"exp", UnaryOp::Exp},
            {"ln", UnaryOp::Ln},       {"gamma", UnaryOp::Gamma},
            {"digamma", UnaryOp::Digamma}};

        if (auto f = funcs.find(name); f != funcs.end()) {
            if (!consume('(')) {
                pos = start;
                fail("function '" + name + "' requires parentheses");
            }
            Expr arg = parse_expr();
            if (!consume(')'))
                fail("expected ')' after argument of '" + name + "'");
            return unary(f->second, arg);
        }
        if (name == "pi")
            return constant(M_PI);
        if (auto v = vars.find(name); v != vars.end())
            return variable(v->second);
        pos = start;
        fail("unknown identifier '" + name + "'");
    }
};

} // namespace

Expr parse(const std::string& source) {
    Parser p(source);
    Expr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != source.size())
        p.fail("trailing input");
    return e;
}

double eval(const Expr& e, const Environment& env) {
    switch (e->kind) {
        case ExprNode::Kind::Constant:
            return e->value;
        case ExprNode::Kind::Variable:
            switch (e->var) {
                case Var::X: return env.x;
                case Var::Y: return env.y;
                case Var::U: return env.u;
                case Var::V: return env.v;
                case Var::Alpha: return env.alpha;
            }
            throw EvalError("unknown variable");
        case ExprNode::Kind::Unary:
            return apply_unary(e->uop, eval(e->lhs, env));
        case ExprNode::Kind::Binary:
            return apply_binary(e->bop, eval(e->lhs, env), eval(e->rhs, env));
    }
    throw EvalError("malformed expression node");
}

Expr diff(const Expr& e, Var var) {
    switch (e->kind) {
        case ExprNode::Kind::Constant:
            return constant(0.0);
        case ExprNode::Kind::Variable:
            return constant(e->var == var ? 1.0 : 0.0);
        case ExprNode::Kind::Unary: {
            const Expr d = diff(e->lhs, var);
            if (is_zero_const(d))
                return constant(0.0);
            switch (e->uop) {
                case UnaryOp::Neg:
                    return unary(UnaryOp::Neg, d);
                case UnaryOp::Sin:
                    return binary(BinaryOp::Mul, unary(UnaryOp::Cos, e->lhs), d);
                case UnaryOp::Cos:
                    return binary(BinaryOp::Mul,
                                  unary(UnaryOp::Neg, unary(UnaryOp::Sin, e->lhs)), d);
                case UnaryOp::Exp:
                    return binary(BinaryOp::Mul, e, d);
                case UnaryOp::Ln:
                    return binary(BinaryOp::Div, d, e->lhs);
                case UnaryOp::Gamma:
                    // Gamma'(f) = Gamma(f) psi0(f) f'
                    return binary(BinaryOp::Mul,
                                  binary(BinaryOp::Mul, e, unary(UnaryOp::Digamma, e->lhs)),
                                  d);
                case UnaryOp::Digamma:
                    // Only reachable with a y/u/v-dependent argument, which the
                    // grammar has no use for; the zero-derivative case returned above.
                    throw EvalError("derivative of digamma is not supported");
            }
            throw EvalError("unknown unary operator");
        }
        case ExprNode::Kind::Binary: {
            const Expr& f = e->lhs;
            const Expr& g = e->rhs;
            switch (e->bop) {
                case BinaryOp::Add:
                    return binary(BinaryOp::Add, diff(f, var), diff(g, var));
                case BinaryOp::Sub:
                    return binary(BinaryOp::Sub, diff(f, var), diff(g, var));
                case BinaryOp::Mul:
                    return binary(BinaryOp::Add,
                                  binary(BinaryOp::Mul, diff(f, var), g),
                                  binary(BinaryOp::Mul, f, diff(g, var)));
                case BinaryOp::Div:
                    // (f/g)' = f'/g - f g'/g^2
                    return binary(BinaryOp::Sub,
                                  binary(BinaryOp::Div, diff(f, var), g),
                                  binary(BinaryOp::Div,
                                         binary(BinaryOp::Mul, f, diff(g, var)),
                                         binary(BinaryOp::Pow, g, constant(2.0))));
                case BinaryOp::Pow: {
                    if (g->kind == ExprNode::Kind::Constant) {
                        // c f^{c-1} f'
                        const double c = g->value;
                        return binary(BinaryOp::Mul,
                                      binary(BinaryOp::Mul, constant(c),
                                             binary(BinaryOp::Pow, f, constant(c - 1.0))),
                                      diff(f, var));
                    }
                    // f^g (g' ln f + g f'/f); positive base required at evaluation
                    const Expr dg = diff(g, var);
                    const Expr df = diff(f, var);
                    const Expr t1 = binary(BinaryOp::Mul, dg, unary(UnaryOp::Ln, f));
                    const Expr t2 = binary(BinaryOp::Mul, g, binary(BinaryOp::Div, df, f));
                    return binary(BinaryOp::Mul, e, binary(BinaryOp::Add, t1, t2));
                }
            }
            throw EvalError("unknown binary operator");
        }
    }
    throw EvalError("malformed expression node");
}

bool references(const Expr& e, Var var) {
    switch (e->kind) {
        case ExprNode::Kind::Constant:
            return false;
        case ExprNode::Kind::Variable:
            return e->var == var;
        case ExprNode::Kind::Unary:
            return references(e->lhs, var);
        case ExprNode::Kind::Binary:
            return references(e->lhs, var) || references(e->rhs, var);
    }
    return false;
}

namespace {

const char* var_name(Var v) {
    switch (v) {
        case Var::X: return "x";
        case Var::Y: return "y";
        case Var::U: return "u";
        case Var::V: return "v";
        case Var::Alpha: return "alpha";
    }
    return "?";
}

const char* func_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Ln: return "ln";
        case UnaryOp::Gamma: return "gamma";
        case UnaryOp::Digamma: return "digamma";
        case UnaryOp::Neg: return "-";
    }
    return "?";
}

// Precedence levels: additive 1, multiplicative 2, unary minus 3, power 4.
int precedence(const Expr& e) {
    switch (e->kind) {
        case ExprNode::Kind::Constant:
            return e->value < 0.0 ? 3 : 5;
        case ExprNode::Kind::Variable:
            return 5;
        case ExprNode::Kind::Unary:
            return e->uop == UnaryOp::Neg ? 3 : 5;
        case ExprNode::Kind::Binary:
            switch (e->bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
    }
    return 5;
}

void render(const Expr& e, std::string& out, int parent_prec) {
    const int prec = precedence(e);
    const bool parens = prec < parent_prec;
    if (parens)
        out += '(';
    switch (e->kind) {
        case ExprNode::Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e->value);
            out += buf;
            break;
        }
        case ExprNode::Kind::Variable:
            out += var_name(e->var);
            break;
        case ExprNode::Kind::Unary:
            if (e->uop == UnaryOp::Neg) {
                out += '-';
                render(e->lhs, out, 3);
            } else {
                out += func_name(e->uop);
                out += '(';
                render(e->lhs, out, 0);
                out += ')';
            }
            break;
        case ExprNode::Kind::Binary: {
            // Left-associative ops parenthesize a same-precedence right child
            // so that printing preserves tree shape; '^' is the reverse.
            const char* op = nullptr;
            int lp = prec, rp = prec + 1;
            switch (e->bop) {
                case BinaryOp::Add: op = " + "; break;
                case BinaryOp::Sub: op = " - "; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
                case BinaryOp::Pow: op = "^"; lp = prec + 1; rp = prec; break;
            }
            render(e->lhs, out, lp);
            out += op;
            render(e->rhs, out, rp);
            break;
        }
    }
    if (parens)
        out += ')';
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    render(e, out, 0);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.get() == b.get())
        return true;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
        case ExprNode::Kind::Constant:
            return a->value == b->value;
        case ExprNode::Kind::Variable:
            return a->var == b->var;
        case ExprNode::Kind::Unary:
            return a->uop == b->uop && structurally_equal(a->lhs, b->lhs);
        case ExprNode::Kind::Binary:
            return a->bop == b->bop && structurally_equal(a->lhs, b->lhs) &&
                   structurally_equal(a->rhs, b->rhs);
    }
    return false;
}

} // namespace fracvar
