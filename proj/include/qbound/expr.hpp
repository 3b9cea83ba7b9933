#ifndef QBOUND_EXPR_HPP
#define QBOUND_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>

namespace qbound {

// Tiny closed expression language over one variable (written `r` or `x`).
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' number)?
//   base   := number | 'r' | 'x' | 'ln' '(' expr ')' | 'exp' '(' expr ')'
//           | '(' expr ')' | '-' factor
// Exponents are numeric literals only; there is no general simplification.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Add, Sub, Mul, Div, Pow, Ln, Exp, Neg };

    Kind kind{Kind::Number};
    double number{0.0};   // Number value, or the exponent for Pow
    ExprPtr lhs, rhs;

    double eval(double v) const;
};

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at line " + std::to_string(line_) +
                             ", column " + std::to_string(col_)),
          line(line_), col(col_) {}
};

ExprPtr parse_expr(const std::string& src);

// Renders a parseable form of the expression (used for derived potentials;
// user-supplied pieces keep their original source text).
std::string format_expr(const ExprPtr& e);

// Node builders.
ExprPtr enumber(double v);
ExprPtr evar();
ExprPtr eadd(ExprPtr a, ExprPtr b);
ExprPtr esub(ExprPtr a, ExprPtr b);
ExprPtr emul(ExprPtr a, ExprPtr b);
ExprPtr ediv(ExprPtr a, ExprPtr b);
ExprPtr epow(ExprPtr a, double p);
ExprPtr eln(ExprPtr a);
ExprPtr eexp(ExprPtr a);
ExprPtr eneg(ExprPtr a);

// Replaces the variable with another expression.
ExprPtr substitute(const ExprPtr& e, const ExprPtr& replacement);

}  // namespace qbound

#endif
