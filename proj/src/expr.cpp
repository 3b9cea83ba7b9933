#include "qbound/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <cstdlib>

namespace qbound {

double Expr::eval(double v) const {
    switch (kind) {
        case Kind::Number: return number;
        case Kind::Var: return v;
        case Kind::Add: return lhs->eval(v) + rhs->eval(v);
        case Kind::Sub: return lhs->eval(v) - rhs->eval(v);
        case Kind::Mul: return lhs->eval(v) * rhs->eval(v);
        case Kind::Div: return lhs->eval(v) / rhs->eval(v);
        case Kind::Pow: return std::pow(lhs->eval(v), number);
        case Kind::Ln: return std::log(lhs->eval(v));
        case Kind::Exp: return std::exp(lhs->eval(v));
        case Kind::Neg: return -lhs->eval(v);
    }
    return 0.0;
}

namespace {

ExprPtr mk(Expr::Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr, double num = 0.0) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->number = num;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

class Parser {
  public:
    explicit Parser(const std::string& src) : src_(src) {}

    ExprPtr run() {
        auto e = expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        advance();
        return true;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
    }

    bool number_ahead() {
        skip_ws();
        if (pos_ >= src_.size()) return false;
        char c = src_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    double number() {
        skip_ws();
        size_t start = pos_;
        bool neg = false;
        if (pos_ < src_.size() && src_[pos_] == '-') {
            neg = true;
            advance();
        }
        size_t digits = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            advance();
        if (pos_ == digits) fail("expected a number");
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
            size_t exp_digits = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
            if (pos_ == exp_digits) fail("malformed exponent");
        }
        double v = std::strtod(src_.substr(start, pos_ - start).c_str(), nullptr);
        (void)neg;
        return v;
    }

    bool keyword(const char* kw) {
        skip_ws();
        size_t n = std::strlen(kw);
        if (src_.compare(pos_, n, kw) != 0) return false;
        // must not run into an identifier character
        if (pos_ + n < src_.size() &&
            std::isalnum(static_cast<unsigned char>(src_[pos_ + n])))
            return false;
        for (size_t i = 0; i < n; ++i) advance();
        return true;
    }

    ExprPtr expr() {
        auto e = term();
        for (;;) {
            if (accept('+'))
                e = mk(Expr::Kind::Add, e, term());
            else if (accept('-'))
                e = mk(Expr::Kind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        auto e = factor();
        for (;;) {
            if (accept('*'))
                e = mk(Expr::Kind::Mul, e, factor());
            else if (accept('/'))
                e = mk(Expr::Kind::Div, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        auto e = base();
        if (accept('^')) {
            skip_ws();
            bool neg = false;
            if (pos_ < src_.size() && src_[pos_] == '-') {
                neg = true;
                advance();
            }
            double p = number();
            e = mk(Expr::Kind::Pow, e, nullptr, neg ? -p : p);
        }
        return e;
    }

    ExprPtr base() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        if (accept('-')) return mk(Expr::Kind::Neg, factor());
        if (accept('(')) {
            auto e = expr();
            expect(')', "to close parenthesis");
            return e;
        }
        if (keyword("ln")) {
            expect('(', "after 'ln'");
            auto e = expr();
            expect(')', "to close 'ln'");
            return mk(Expr::Kind::Ln, e);
        }
        if (keyword("exp")) {
            expect('(', "after 'exp'");
            auto e = expr();
            expect(')', "to close 'exp'");
            return mk(Expr::Kind::Exp, e);
        }
        if (keyword("r") || keyword("x")) return mk(Expr::Kind::Var);
        if (number_ahead()) return mk(Expr::Kind::Number, nullptr, nullptr, number());
        fail("expected number, variable, function, or '('");
    }
};

void fmt_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void fmt(std::string& out, const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Number:
            if (e->number < 0) {
                out += "(";
                fmt_num(out, e->number);
                out += ")";
            } else {
                fmt_num(out, e->number);
            }
            break;
        case Expr::Kind::Var: out += "r"; break;
        case Expr::Kind::Add:
            out += "(";
            fmt(out, e->lhs);
            out += "+";
            fmt(out, e->rhs);
            out += ")";
            break;
        case Expr::Kind::Sub:
            out += "(";
            fmt(out, e->lhs);
            out += "-";
            fmt(out, e->rhs);
            out += ")";
            break;
        case Expr::Kind::Mul:
            out += "(";
            fmt(out, e->lhs);
            out += "*";
            fmt(out, e->rhs);
            out += ")";
            break;
        case Expr::Kind::Div:
            out += "(";
            fmt(out, e->lhs);
            out += "/";
            fmt(out, e->rhs);
            out += ")";
            break;
        case Expr::Kind::Pow:
            out += "(";
            fmt(out, e->lhs);
            out += ")^";
            if (e->number < 0) {
                out += "-";
                fmt_num(out, -e->number);
            } else {
                fmt_num(out, e->number);
            }
            break;
        case Expr::Kind::Ln:
            out += "ln(";
            fmt(out, e->lhs);
            out += ")";
            break;
        case Expr::Kind::Exp:
            out += "exp(";
            fmt(out, e->lhs);
            out += ")";
            break;
        case Expr::Kind::Neg:
            out += "(-";
            fmt(out, e->lhs);
            out += ")";
            break;
    }
}

}  // namespace

ExprPtr parse_expr(const std::string& src) { return Parser(src).run(); }

std::string format_expr(const ExprPtr& e) {
    std::string out;
    fmt(out, e);
    return out;
}

ExprPtr enumber(double v) { return mk(Expr::Kind::Number, nullptr, nullptr, v); }
ExprPtr evar() { return mk(Expr::Kind::Var); }
ExprPtr eadd(ExprPtr a, ExprPtr b) { return mk(Expr::Kind::Add, std::move(a), std::move(b)); }
ExprPtr esub(ExprPtr a, ExprPtr b) { return mk(Expr::Kind::Sub, std::move(a), std::move(b)); }
ExprPtr emul(ExprPtr a, ExprPtr b) { return mk(Expr::Kind::Mul, std::move(a), std::move(b)); }
ExprPtr ediv(ExprPtr a, ExprPtr b) { return mk(Expr::Kind::Div, std::move(a), std::move(b)); }
ExprPtr epow(ExprPtr a, double p) { return mk(Expr::Kind::Pow, std::move(a), nullptr, p); }
ExprPtr eln(ExprPtr a) { return mk(Expr::Kind::Ln, std::move(a)); }
ExprPtr eexp(ExprPtr a) { return mk(Expr::Kind::Exp, std::move(a)); }
ExprPtr eneg(ExprPtr a) { return mk(Expr::Kind::Neg, std::move(a)); }

ExprPtr substitute(const ExprPtr& e, const ExprPtr& replacement) {
    switch (e->kind) {
        case Expr::Kind::Number: return e;
        case Expr::Kind::Var: return replacement;
        case Expr::Kind::Pow: return epow(substitute(e->lhs, replacement), e->number);
        case Expr::Kind::Ln: return eln(substitute(e->lhs, replacement));
        case Expr::Kind::Exp: return eexp(substitute(e->lhs, replacement));
        case Expr::Kind::Neg: return eneg(substitute(e->lhs, replacement));
        default: break;
    }
    auto a = substitute(e->lhs, replacement);
    auto b = substitute(e->rhs, replacement);
    switch (e->kind) {
        case Expr::Kind::Add: return eadd(a, b);
        case Expr::Kind::Sub: return esub(a, b);
        case Expr::Kind::Mul: return emul(a, b);
        case Expr::Kind::Div: return ediv(a, b);
        default: break;
    }
    return e;
}

}  // namespace qbound
