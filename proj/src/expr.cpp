#include "ineq/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <span>

#include "ineq/error.hpp"

namespace ineq {

namespace detail {

enum class Op { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Exp, Ln, Sin, Cos, Sinh, Cosh, Sqrt };

struct Node {
    Op op = Op::Constant;
    double value = 0.0;  // literal for Constant, exponent for Pow
    std::unique_ptr<const Node> lhs;
    std::unique_ptr<const Node> rhs;
};

}  // namespace detail

namespace {

using detail::Node;
using detail::Op;
using NodePtr = std::unique_ptr<const Node>;

NodePtr make_leaf(Op op, double value = 0.0) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->value = value;
    return n;
}

NodePtr make_unary(Op op, NodePtr arg, double value = 0.0) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->value = value;
    n->lhs = std::move(arg);
    return n;
}

NodePtr make_binary(Op op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

bool mentions_variable(const Node& n) {
    if (n.op == Op::Variable) return true;
    if (n.lhs && mentions_variable(*n.lhs)) return true;
    return n.rhs && mentions_variable(*n.rhs);
}

[[noreturn]] void domain_error(std::string_view what, double at) {
    throw Error(ErrorCode::Domain, std::string(what) + " at argument " + std::to_string(at));
}

bool is_small_integer(double r) { return r == std::floor(r) && std::abs(r) <= 1024.0; }

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        auto root = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary(Op::Add, std::move(lhs), parse_term());
            } else if (accept('-')) {
                lhs = make_binary(Op::Sub, std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary(Op::Mul, std::move(lhs), parse_unary());
            } else if (accept('/')) {
                lhs = make_binary(Op::Div, std::move(lhs), parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_unary(Op::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_atom();
        if (!accept('^')) return base;
        return make_unary(Op::Pow, std::move(base), parse_exponent());
    }

    double parse_exponent() {
        skip_ws();
        const std::size_t start = pos_;
        if (accept('(')) {
            auto inner = parse_expr();
            expect(')');
            if (mentions_variable(*inner)) {
                pos_ = start;
                fail("exponent must be constant");
            }
            return ExprEval(*inner);
        }
        double sign = 1.0;
        if (accept('-')) {
            sign = -1.0;
        } else {
            accept('+');
        }
        skip_ws();
        if (pos_ >= text_.size() || !starts_number()) fail("expected numeric exponent");
        return sign * parse_number();
    }

    static double ExprEval(const Node& n);

    bool starts_number() const {
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return true;
        return c == '.' && pos_ + 1 < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
    }

    double parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits();
            } else {
                pos_ = save;  // "2e" is the number 2 followed by an identifier
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return value;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr();
            expect(')');
            return inner;
        }
        if (starts_number()) return make_leaf(Op::Constant, parse_number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "t") return make_leaf(Op::Variable);
            Op op{};
            if (name == "exp") {
                op = Op::Exp;
            } else if (name == "ln") {
                op = Op::Ln;
            } else if (name == "sin") {
                op = Op::Sin;
            } else if (name == "cos") {
                op = Op::Cos;
            } else if (name == "sinh") {
                op = Op::Sinh;
            } else if (name == "cosh") {
                op = Op::Cosh;
            } else if (name == "sqrt") {
                op = Op::Sqrt;
            } else {
                pos_ = start;
                fail("unknown identifier '" + std::string(name) + "'");
            }
            expect('(');
            auto arg = parse_expr();
            expect(')');
            return make_unary(op, std::move(arg));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Scalar evaluation
// ---------------------------------------------------------------------------

double eval_scalar(const Node& n, double t) {
    switch (n.op) {
        case Op::Constant: return n.value;
        case Op::Variable: return t;
        case Op::Add: return eval_scalar(*n.lhs, t) + eval_scalar(*n.rhs, t);
        case Op::Sub: return eval_scalar(*n.lhs, t) - eval_scalar(*n.rhs, t);
        case Op::Mul: return eval_scalar(*n.lhs, t) * eval_scalar(*n.rhs, t);
        case Op::Div: {
            const double num = eval_scalar(*n.lhs, t);
            const double den = eval_scalar(*n.rhs, t);
            if (den == 0.0) domain_error("division by zero", t);
            return num / den;
        }
        case Op::Neg: return -eval_scalar(*n.lhs, t);
        case Op::Pow: {
            const double base = eval_scalar(*n.lhs, t);
            const double r = n.value;
            if (base == 0.0 && r < 0.0) domain_error("zero raised to a negative power", t);
            if (base < 0.0 && !is_small_integer(r)) domain_error("negative base with non-integer exponent", t);
            return std::pow(base, r);
        }
        case Op::Exp: return std::exp(eval_scalar(*n.lhs, t));
        case Op::Ln: {
            const double arg = eval_scalar(*n.lhs, t);
            if (!(arg > 0.0)) domain_error("ln of a non-positive value", t);
            return std::log(arg);
        }
        case Op::Sin: return std::sin(eval_scalar(*n.lhs, t));
        case Op::Cos: return std::cos(eval_scalar(*n.lhs, t));
        case Op::Sinh: return std::sinh(eval_scalar(*n.lhs, t));
        case Op::Cosh: return std::cosh(eval_scalar(*n.lhs, t));
        case Op::Sqrt: {
            const double arg = eval_scalar(*n.lhs, t);
            if (arg < 0.0) domain_error("sqrt of a negative value", t);
            return std::sqrt(arg);
        }
    }
    return 0.0;
}

double Parser::ExprEval(const Node& n) { return eval_scalar(n, 0.0); }

// ---------------------------------------------------------------------------
// Truncated Taylor arithmetic. All jets share the same length m + 1.
// ---------------------------------------------------------------------------

using Jet = std::vector<double>;

Jet jet_mul(std::span<const double> a, std::span<const double> b) {
    Jet c(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
        c[k] = s;
    }
    return c;
}

Jet jet_div(std::span<const double> a, std::span<const double> b, double t) {
    if (b[0] == 0.0) domain_error("division by zero", t);
    Jet c(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        double s = a[k];
        for (std::size_t j = 1; j <= k; ++j) s -= b[j] * c[k - j];
        c[k] = s / b[0];
    }
    return c;
}

Jet jet_ipow(Jet base, long long e) {
    Jet result(base.size(), 0.0);
    result[0] = 1.0;
    while (e > 0) {
        if (e & 1) result = jet_mul(result, base);
        e >>= 1;
        if (e > 0) base = jet_mul(base, base);
    }
    return result;
}

Jet jet_pow(const Jet& a, double r, double t) {
    const std::size_t len = a.size();
    if (is_small_integer(r)) {
        if (r >= 0.0) return jet_ipow(a, static_cast<long long>(r));
        if (a[0] == 0.0) domain_error("zero raised to a negative power", t);
        Jet one(len, 0.0);
        one[0] = 1.0;
        return jet_div(one, jet_ipow(a, static_cast<long long>(-r)), t);
    }
    if (a[0] < 0.0) domain_error("negative base with non-integer exponent", t);
    if (a[0] == 0.0) {
        if (len == 1 && r > 0.0) return Jet{0.0};
        domain_error("non-integer power is not differentiable at zero", t);
    }
    Jet p(len, 0.0);
    p[0] = std::pow(a[0], r);
    for (std::size_t k = 1; k < len; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            s += (r * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * p[k - j];
        }
        p[k] = s / (static_cast<double>(k) * a[0]);
    }
    return p;
}

Jet jet_exp(const Jet& a) {
    Jet c(a.size(), 0.0);
    c[0] = std::exp(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * c[k - j];
        c[k] = s / static_cast<double>(k);
    }
    return c;
}

Jet jet_ln(const Jet& a, double t) {
    if (!(a[0] > 0.0)) domain_error("ln of a non-positive value", t);
    Jet c(a.size(), 0.0);
    c[0] = std::log(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * c[j] * a[k - j];
        c[k] = (a[k] - s / static_cast<double>(k)) / a[0];
    }
    return c;
}

// sin/cos (hyperbolic = false) or sinh/cosh (hyperbolic = true), computed together.
std::pair<Jet, Jet> jet_sincos(const Jet& a, bool hyperbolic) {
    Jet s(a.size(), 0.0);
    Jet c(a.size(), 0.0);
    s[0] = hyperbolic ? std::sinh(a[0]) : std::sin(a[0]);
    c[0] = hyperbolic ? std::cosh(a[0]) : std::cos(a[0]);
    const double sign = hyperbolic ? 1.0 : -1.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        double ss = 0.0;
        double cs = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            const double w = static_cast<double>(j) * a[j];
            ss += w * c[k - j];
            cs += w * s[k - j];
        }
        s[k] = ss / static_cast<double>(k);
        c[k] = sign * cs / static_cast<double>(k);
    }
    return {std::move(s), std::move(c)};
}

Jet jet_sqrt(const Jet& a, double t) {
    if (a[0] < 0.0) domain_error("sqrt of a negative value", t);
    if (a[0] == 0.0) {
        if (a.size() == 1) return Jet{0.0};
        domain_error("sqrt is not differentiable at zero", t);
    }
    Jet s(a.size(), 0.0);
    s[0] = std::sqrt(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double acc = a[k];
        for (std::size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = acc / (2.0 * s[0]);
    }
    return s;
}

Jet eval_jet(const Node& n, double t0, std::size_t len) {
    switch (n.op) {
        case Op::Constant: {
            Jet c(len, 0.0);
            c[0] = n.value;
            return c;
        }
        case Op::Variable: {
            Jet c(len, 0.0);
            c[0] = t0;
            if (len > 1) c[1] = 1.0;
            return c;
        }
        case Op::Add:
        case Op::Sub: {
            Jet a = eval_jet(*n.lhs, t0, len);
            const Jet b = eval_jet(*n.rhs, t0, len);
            const double sign = n.op == Op::Add ? 1.0 : -1.0;
            for (std::size_t k = 0; k < len; ++k) a[k] += sign * b[k];
            return a;
        }
        case Op::Mul: return jet_mul(eval_jet(*n.lhs, t0, len), eval_jet(*n.rhs, t0, len));
        case Op::Div: return jet_div(eval_jet(*n.lhs, t0, len), eval_jet(*n.rhs, t0, len), t0);
        case Op::Neg: {
            Jet a = eval_jet(*n.lhs, t0, len);
            for (double& v : a) v = -v;
            return a;
        }
        case Op::Pow: return jet_pow(eval_jet(*n.lhs, t0, len), n.value, t0);
        case Op::Exp: return jet_exp(eval_jet(*n.lhs, t0, len));
        case Op::Ln: return jet_ln(eval_jet(*n.lhs, t0, len), t0);
        case Op::Sin: return jet_sincos(eval_jet(*n.lhs, t0, len), false).first;
        case Op::Cos: return jet_sincos(eval_jet(*n.lhs, t0, len), false).second;
        case Op::Sinh: return jet_sincos(eval_jet(*n.lhs, t0, len), true).first;
        case Op::Cosh: return jet_sincos(eval_jet(*n.lhs, t0, len), true).second;
        case Op::Sqrt: return jet_sqrt(eval_jet(*n.lhs, t0, len), t0);
    }
    return Jet(len, 0.0);
}

}  // namespace

double TaylorJet::derivative(int k) const {
    if (k < 0 || k > order()) {
        throw Error(ErrorCode::OrderOverflow, "derivative order " + std::to_string(k) +
                                                  " outside jet of order " + std::to_string(order()));
    }
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return factorial * coeffs[static_cast<std::size_t>(k)];
}

ExprFunction ExprFunction::parse(std::string_view text) {
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    if (first == text.size()) throw SyntaxError(text.size(), "empty expression");
    Parser parser(text);
    NodePtr root = parser.parse_all();
    return ExprFunction(std::shared_ptr<const detail::Node>(std::move(root)), std::string(text));
}

double ExprFunction::operator()(double t) const { return eval_scalar(*root_, t); }

TaylorJet ExprFunction::taylor(double t0, int order, int order_cap) const {
    if (order < 0) throw Error(ErrorCode::OrderOverflow, "negative Taylor order");
    if (order > order_cap) {
        throw Error(ErrorCode::OrderOverflow, "Taylor order " + std::to_string(order) +
                                                  " exceeds cap " + std::to_string(order_cap));
    }
    return TaylorJet{t0, eval_jet(*root_, t0, static_cast<std::size_t>(order) + 1)};
}

double ExprFunction::deriv(double t0, int k) const {
    if (k == 0) return (*this)(t0);
    return taylor(t0, k).derivative(k);
}

bool ExprFunction::is_constant() const noexcept { return !mentions_variable(*root_); }

}  // namespace ineq
