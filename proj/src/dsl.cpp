#include "lgf/dsl.hpp"

#include <cctype>

#include "lgf/examples.hpp"

namespace lgf {

namespace {

[[noreturn]] void fail_at(int column, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "column " + std::to_string(column) + ": " + msg);
}

struct Token {
    enum class Kind { number, ident, op, end };
    Kind kind = Kind::end;
    std::string text;
    int column = 1;
};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) { advance(); }

    Expr parse() {
        Expr e = expr();
        if (tok_.kind != Token::Kind::end) fail_at(tok_.column, "unexpected '" + tok_.text + "'");
        return e;
    }

private:
    const std::string& s_;
    size_t i_ = 0;
    Token tok_;

    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        tok_ = Token{};
        tok_.column = static_cast<int>(i_) + 1;
        if (i_ >= s_.size()) return;
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            tok_ = {Token::Kind::number, s_.substr(i_, j - i_), tok_.column};
            i_ = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
            tok_ = {Token::Kind::ident, s_.substr(i_, j - i_), tok_.column};
            i_ = j;
        } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
            tok_ = {Token::Kind::op, std::string(1, c), tok_.column};
            ++i_;
        } else {
            fail_at(tok_.column, std::string("unexpected character '") + c + "'");
        }
    }

    bool at_op(char c) const { return tok_.kind == Token::Kind::op && tok_.text[0] == c; }

    void expect(char c) {
        if (!at_op(c)) fail_at(tok_.column, std::string("expected '") + c + "'");
        advance();
    }

    static Expr binary(Expr::Kind k, Expr a, Expr b, int column) {
        Expr e;
        e.kind = k;
        e.column = column;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }

    Expr expr() {
        Expr e = term();
        while (at_op('+') || at_op('-')) {
            const Expr::Kind k = at_op('+') ? Expr::Kind::add : Expr::Kind::sub;
            const int col = tok_.column;
            advance();
            e = binary(k, std::move(e), term(), col);
        }
        return e;
    }

    bool starts_base() const {
        return tok_.kind == Token::Kind::number || tok_.kind == Token::Kind::ident || at_op('(');
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            const int col = tok_.column;
            if (at_op('*') || at_op('/')) {
                const Expr::Kind k = at_op('*') ? Expr::Kind::mul : Expr::Kind::div;
                advance();
                e = binary(k, std::move(e), factor(), col);
            } else if (starts_base()) {
                e = binary(Expr::Kind::mul, std::move(e), factor(), col);
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        const int col = tok_.column;
        if (at_op('-') || at_op('+')) {
            const bool neg = at_op('-');
            advance();
            Expr f = factor();
            if (!neg) return f;
            Expr e;
            e.kind = Expr::Kind::neg;
            e.column = col;
            e.args.push_back(std::move(f));
            return e;
        }
        Expr b = base();
        if (!at_op('^')) return b;
        const int pcol = tok_.column;
        advance();
        return binary(Expr::Kind::pow, std::move(b), exponent(), pcol);
    }

    Expr number() {
        Expr e;
        e.kind = Expr::Kind::number;
        e.column = tok_.column;
        e.number = Rational(tok_.text);
        advance();
        return e;
    }

    Expr exponent() {
        const int col = tok_.column;
        if (at_op('-')) {
            advance();
            if (tok_.kind != Token::Kind::number) fail_at(tok_.column, "expected an integer exponent");
            Expr e = number();
            e.number = -e.number;
            e.column = col;
            return e;
        }
        if (tok_.kind == Token::Kind::number) return number();
        if (tok_.kind == Token::Kind::ident) {
            Expr e;
            e.kind = Expr::Kind::symbol;
            e.name = tok_.text;
            e.column = col;
            advance();
            return e;
        }
        if (at_op('(')) {
            advance();
            Expr e = expr();
            expect(')');
            return e;
        }
        fail_at(col, tok_.kind == Token::Kind::end ? "missing exponent" : "unexpected '" + tok_.text + "'");
    }

    Expr base() {
        const int col = tok_.column;
        if (tok_.kind == Token::Kind::number) return number();
        if (tok_.kind == Token::Kind::ident) {
            Expr e;
            e.name = tok_.text;
            e.column = col;
            advance();
            if (!at_op('(')) {
                e.kind = Expr::Kind::symbol;
                return e;
            }
            e.kind = Expr::Kind::call;
            advance();
            if (!at_op(')')) {
                e.args.push_back(expr());
                while (at_op(',')) {
                    advance();
                    e.args.push_back(expr());
                }
            }
            expect(')');
            return e;
        }
        if (at_op('(')) {
            advance();
            Expr e = expr();
            expect(')');
            return e;
        }
        fail_at(col, tok_.kind == Token::Kind::end ? "unexpected end of expression" : "unexpected '" + tok_.text + "'");
    }
};

bool reserved(const std::string& n) { return n == "p" || n == "q" || n == "pi" || n == "t" || n == "L"; }

// "c (1 + t)" with a symbol or parameter c is a product, not a call.
bool is_product_call(const Expr& e, const DslContext& ctx) {
    return e.args.size() == 1 && (reserved(e.name) || ctx.params.count(e.name));
}

Expr as_product(const Expr& e) {
    Expr s;
    s.kind = Expr::Kind::symbol;
    s.name = e.name;
    s.column = e.column;
    Expr m;
    m.kind = Expr::Kind::mul;
    m.column = e.column;
    m.args = {s, e.args[0]};
    return m;
}

Scalar one(const DslContext& ctx) { return Scalar(1).bind(ctx.cfg); }

Scalar symbol_scalar(const Expr& e, const DslContext& ctx) {
    if (e.name == "p") return Scalar(ctx.cfg.p).bind(ctx.cfg);
    if (e.name == "q") return Scalar(ctx.cfg.q).bind(ctx.cfg);
    if (e.name == "pi") return Scalar::pi(ctx.cfg);
    auto it = ctx.params.find(e.name);
    if (it == ctx.params.end()) fail_at(e.column, "unknown symbol '" + e.name + "'");
    return it->second.bind(ctx.cfg);
}

long integer_arg(const Expr& e, const DslContext& ctx, const std::string& what) {
    Rational r = eval_rational(e, ctx);
    if (r.get_den() != 1 || !r.get_num().fits_slong_p()) fail_at(e.column, what + " must be an integer");
    return r.get_num().get_si();
}

/// Powers with a non-integer exponent exist only for the symbols q, p, pi.
Scalar symbol_power(const Expr& b, const Rational& r, const DslContext& ctx) {
    if (b.kind == Expr::Kind::symbol) {
        if (b.name == "q") return q_power(r, ctx.cfg);
        if (b.name == "p") return p_power(r, ctx.cfg);
        if (b.name == "pi" && r.get_den() == 1) return Scalar::pi_power(r.get_num().get_si(), ctx.cfg);
    }
    throw Error(ErrorCode::IllegalExponent,
                "column " + std::to_string(b.column) + ": exponent " + rat_str(r) + " is only allowed on q, p or pi");
}

template <class V>
struct Ops;

template <>
struct Ops<Scalar> {
    static Scalar constant(const Scalar& c, const DslContext&) { return c; }
    static Scalar variable(const Expr& e, const DslContext&) {
        fail_at(e.column, "'" + e.name + "' is not allowed in a scalar");
    }
    static Scalar divide(const Scalar& a, const Scalar& b, const Expr& e, const DslContext&) {
        if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "column " + std::to_string(e.column));
        return a / b;
    }
    static Scalar power(const Scalar& a, long k, const Expr& e, const DslContext& ctx) {
        return k < 0 ? divide(Scalar(1).bind(ctx.cfg), a.pow(-k), e, ctx) : a.pow(k);
    }
    static Scalar call(const Expr& e, const DslContext&) {
        fail_at(e.column, "function '" + e.name + "' is not allowed in a scalar");
    }
};

Series generator(const Expr& e, const DslContext& ctx, bool need_degree) {
    const auto& a = e.args;
    auto degree = [&](size_t i) -> long {
        if (a.size() > i) return integer_arg(a[i], ctx, "degree");
        if (need_degree) fail_at(e.column, e.name + " needs an explicit degree here");
        return ctx.depth;
    };
    auto arity = [&](size_t lo, size_t hi) {
        if (a.size() < lo || a.size() > hi) fail_at(e.column, "wrong number of arguments to " + e.name);
    };
    Series s;
    if (e.name == "xmu" || e.name == "gmu") {
        arity(1, 2);
        const Rational mu = eval_rational(a[0], ctx);
        s = e.name == "xmu" ? xmu(mu, ctx.cfg, degree(1)) : gmu(mu, ctx.cfg, degree(1));
    } else if (e.name == "bessel_b" || e.name == "bessel_c") {
        arity(0, 1);
        s = e.name == "bessel_b" ? bessel_b(ctx.cfg, degree(0)) : bessel_c(ctx.cfg, degree(0));
    } else if (e.name == "bessel_u") {
        arity(1, 2);
        const long sign = integer_arg(a[0], ctx, "sign");
        if (sign != 1 && sign != -1) fail_at(a[0].column, "sign must be 1 or -1");
        s = bessel_u(static_cast<int>(sign), ctx.cfg, degree(1));
    } else if (e.name == "bessel_frob") {
        arity(2, 3);
        if (need_degree) fail_at(e.column, "bessel_frob is a truncated series");
        const long i = integer_arg(a[0], ctx, "row"), j = integer_arg(a[1], ctx, "column");
        if (i < 1 || i > 2 || j < 1 || j > 2) fail_at(e.column, "bessel_frob indices are 1 or 2");
        const long terms = degree(2);
        auto& cache = *ctx.frobenius_cache;
        auto it = cache.find(terms);
        if (it == cache.end()) it = cache.emplace(terms, bessel_frobenius(ctx.cfg, terms)).first;
        return it->second(i - 1, j - 1);
    } else {
        fail_at(e.column, "unknown function '" + e.name + "'");
    }
    return need_degree ? s.polynomial_part() : s;
}

template <>
struct Ops<LogSeries> {
    static LogSeries constant(const Scalar& c, const DslContext&) { return LogSeries(Series(c)); }
    static LogSeries variable(const Expr& e, const DslContext& ctx) {
        if (e.name == "t") return LogSeries(Series::monomial(one(ctx), 1));
        return LogSeries::log_power(1, one(ctx));
    }
    static LogSeries divide(const LogSeries& a, const LogSeries& b, const Expr& e, const DslContext& ctx) {
        if (b.log_degree() > 0) fail_at(e.column, "division by a series with log terms");
        const Series d = b.part(0);
        if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "column " + std::to_string(e.column));
        if (d.exact() && d.size() == 1) {
            const auto& [k, c] = *d.terms().begin();
            return a * LogSeries(Series::monomial(c.inverse(), -k));
        }
        return a * LogSeries(inverse(d, ctx.depth));
    }
    static LogSeries power(const LogSeries& a, long k, const Expr& e, const DslContext& ctx) {
        if (k < 0) return divide(LogSeries(Series(one(ctx))), power(a, -k, e, ctx), e, ctx);
        LogSeries r(Series(one(ctx))), b = a;
        while (k > 0) {
            if (k & 1) r *= b;
            k >>= 1;
            if (k > 0) b *= b;
        }
        return r;
    }
    static LogSeries call(const Expr& e, const DslContext& ctx) {
        if (e.name == "O") {
            if (e.args.size() != 1) fail_at(e.column, "O takes one argument");
            const LogSeries m = eval_log_series(e.args[0], ctx);
            const Series& s = m.part(0);
            if (m.log_degree() != 0 || !s.exact() || s.size() != 1 || s.terms().begin()->second != one(ctx))
                fail_at(e.column, "O expects a power of t");
            return LogSeries(Series::unknown(s.terms().begin()->first - 1));
        }
        return LogSeries(generator(e, ctx, false));
    }
};

template <>
struct Ops<RatFunc> {
    static RatFunc constant(const Scalar& c, const DslContext&) { return RatFunc(c); }
    static RatFunc variable(const Expr& e, const DslContext& ctx) {
        if (e.name == "L") fail_at(e.column, "'L' is not allowed in a rational function");
        return RatFunc(Series::monomial(one(ctx), 1));
    }
    static RatFunc divide(const RatFunc& a, const RatFunc& b, const Expr& e, const DslContext&) {
        if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "column " + std::to_string(e.column));
        return a / b;
    }
    static RatFunc power(const RatFunc& a, long k, const Expr& e, const DslContext& ctx) {
        if (k < 0) return divide(RatFunc(one(ctx)), power(a, -k, e, ctx), e, ctx);
        RatFunc r(one(ctx));
        for (long i = 0; i < k; ++i) r *= a;
        return r;
    }
    static RatFunc call(const Expr& e, const DslContext& ctx) {
        if (e.name == "O") fail_at(e.column, "O(...) is not allowed in a rational function");
        return RatFunc(generator(e, ctx, true));
    }
};

template <class V>
V evaluate(const Expr& e, const DslContext& ctx) {
    using O = Ops<V>;
    switch (e.kind) {
        case Expr::Kind::number:
            return O::constant(Scalar(e.number).bind(ctx.cfg), ctx);
        case Expr::Kind::symbol:
            if (e.name == "t" || e.name == "L") return O::variable(e, ctx);
            return O::constant(symbol_scalar(e, ctx), ctx);
        case Expr::Kind::call:
            if (is_product_call(e, ctx)) return evaluate<V>(as_product(e), ctx);
            return O::call(e, ctx);
        case Expr::Kind::neg:
            return -evaluate<V>(e.args[0], ctx);
        case Expr::Kind::add:
            return evaluate<V>(e.args[0], ctx) + evaluate<V>(e.args[1], ctx);
        case Expr::Kind::sub:
            return evaluate<V>(e.args[0], ctx) - evaluate<V>(e.args[1], ctx);
        case Expr::Kind::mul:
            return evaluate<V>(e.args[0], ctx) * evaluate<V>(e.args[1], ctx);
        case Expr::Kind::div:
            return O::divide(evaluate<V>(e.args[0], ctx), evaluate<V>(e.args[1], ctx), e, ctx);
        case Expr::Kind::pow: {
            const Rational r = eval_rational(e.args[1], ctx);
            if (r.get_den() != 1) return O::constant(symbol_power(e.args[0], r, ctx), ctx);
            if (!r.get_num().fits_slong_p()) fail_at(e.column, "exponent too large");
            const Expr& b = e.args[0];
            if (b.kind == Expr::Kind::symbol && (b.name == "q" || b.name == "p" || b.name == "pi"))
                return O::constant(symbol_power(b, r, ctx), ctx);
            return O::power(evaluate<V>(b, ctx), r.get_num().get_si(), e, ctx);
        }
    }
    fail_at(e.column, "bad expression");
}

// Sign and body of one term; `mono` is the monomial text or empty.
std::pair<bool, std::string> term_text(const Scalar& c, const std::string& mono) {
    if (!c.is_rational()) return {false, "(" + c.str() + ")" + (mono.empty() ? "" : " " + mono)};
    Rational r = c.coeff(0);
    const bool neg = r < 0;
    if (neg) r = -r;
    if (mono.empty()) return {neg, rat_str(r)};
    return {neg, r == 1 ? mono : rat_str(r) + " " + mono};
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms) {
    std::string out;
    for (size_t k = 0; k < terms.size(); ++k) {
        const auto& [neg, body] = terms[k];
        if (k == 0)
            out += (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

std::string t_mono(long e) {
    if (e == 0) return "";
    if (e == 1) return "t";
    return "t^" + std::to_string(e);
}

}  // namespace

Expr parse_expression(const std::string& text) { return Parser(text).parse(); }

Rational eval_rational(const Expr& e, const DslContext& ctx) {
    switch (e.kind) {
        case Expr::Kind::number:
            return e.number;
        case Expr::Kind::symbol: {
            if (e.name == "p") return ctx.cfg.p;
            if (e.name == "q") return ctx.cfg.q;
            if (reserved(e.name)) fail_at(e.column, "'" + e.name + "' is not rational");
            auto it = ctx.params.find(e.name);
            if (it == ctx.params.end()) fail_at(e.column, "unknown symbol '" + e.name + "'");
            if (!it->second.is_rational()) fail_at(e.column, "parameter '" + e.name + "' is not rational");
            return it->second.coeff(0);
        }
        case Expr::Kind::neg:
            return -eval_rational(e.args[0], ctx);
        case Expr::Kind::add:
            return eval_rational(e.args[0], ctx) + eval_rational(e.args[1], ctx);
        case Expr::Kind::sub:
            return eval_rational(e.args[0], ctx) - eval_rational(e.args[1], ctx);
        case Expr::Kind::mul:
            return eval_rational(e.args[0], ctx) * eval_rational(e.args[1], ctx);
        case Expr::Kind::div: {
            const Rational d = eval_rational(e.args[1], ctx);
            if (d == 0) throw Error(ErrorCode::DivisionByZero, "column " + std::to_string(e.column));
            return eval_rational(e.args[0], ctx) / d;
        }
        case Expr::Kind::pow: {
            const Rational b = eval_rational(e.args[0], ctx), r = eval_rational(e.args[1], ctx);
            if (r.get_den() != 1 || !r.get_num().fits_slong_p()) fail_at(e.column, "rational powers must be integral");
            const Scalar s = Scalar(b).pow(r.get_num().get_si());
            return s.coeff(0);
        }
        case Expr::Kind::call:
            if (is_product_call(e, ctx)) return eval_rational(as_product(e), ctx);
            fail_at(e.column, "function '" + e.name + "' where a rational is expected");
    }
    fail_at(e.column, "bad expression");
}

Scalar eval_scalar(const Expr& e, const DslContext& ctx) { return evaluate<Scalar>(e, ctx); }
LogSeries eval_log_series(const Expr& e, const DslContext& ctx) { return evaluate<LogSeries>(e, ctx); }

Series eval_series(const Expr& e, const DslContext& ctx) {
    const LogSeries v = evaluate<LogSeries>(e, ctx);
    if (v.log_degree() > 0) fail_at(e.column, "log terms are not allowed here");
    return v.part(0);
}

RatFunc eval_ratfunc(const Expr& e, const DslContext& ctx) { return evaluate<RatFunc>(e, ctx); }

Scalar parse_scalar(const std::string& text, const DslContext& ctx) { return eval_scalar(parse_expression(text), ctx); }
Series parse_series(const std::string& text, const DslContext& ctx) { return eval_series(parse_expression(text), ctx); }
LogSeries parse_log_series(const std::string& text, const DslContext& ctx) {
    return eval_log_series(parse_expression(text), ctx);
}
RatFunc parse_ratfunc(const std::string& text, const DslContext& ctx) {
    return eval_ratfunc(parse_expression(text), ctx);
}

std::string format_scalar(const Scalar& s) { return s.str(); }

std::string format_series(const Series& s) {
    std::vector<std::pair<bool, std::string>> terms;
    for (const auto& [e, c] : s.terms()) terms.push_back(term_text(c, t_mono(e)));
    if (!s.exact()) {
        const std::string o = "O(t^" + std::to_string(s.trunc() + 1) + ")";
        if (terms.empty()) return o;
        terms.emplace_back(false, o);
    }
    return join_terms(terms);
}

std::string format_log_series(const LogSeries& s) {
    std::string out;
    for (size_t j = 0; j < s.parts().size(); ++j) {
        const Series& part = s.parts()[j];
        if (part.is_exact_zero()) continue;
        std::string body = format_series(part);
        if (j > 0) body = "(" + body + ") L" + (j > 1 ? "^" + std::to_string(j) : "");
        out += (out.empty() ? "" : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

std::string format_ratfunc(const RatFunc& f) {
    if (f.is_polynomial()) return format_series(f.num());
    return "(" + format_series(f.num()) + ") / (" + format_series(f.den()) + ")";
}

}  // namespace lgf
