#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ineq {

/// Factorials beyond this order lose all meaning in double precision once
/// they enter the identity coefficients.
inline constexpr int kDefaultOrderCap = 32;

/// Truncated Taylor expansion about `center`: coeffs[k] = f^(k)(center) / k!.
struct TaylorJet {
    double center = 0.0;
    std::vector<double> coeffs;

    [[nodiscard]] int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

    /// k! * coeffs[k]
    [[nodiscard]] double derivative(int k) const;
};

namespace detail {
struct Node;
}

/// A parsed expression in the single variable `t`.
///
/// Grammar (whitespace insignificant):
///
///     expr     := term (('+' | '-') term)*
///     term     := unary (('*' | '/') unary)*
///     unary    := '-' unary | power
///     power    := atom ('^' exponent)?
///     exponent := ('-' | '+')? number | '(' expr ')'      constant, no `t`
///     atom     := number | 't' | func '(' expr ')' | '(' expr ')'
///     func     := exp | ln | sin | cos | sinh | cosh | sqrt
///
/// Values are immutable; copies share the tree and are safe to use from
/// several threads at once.
class ExprFunction {
public:
    /// Throws SyntaxError carrying the byte offset of the offending token.
    static ExprFunction parse(std::string_view text);

    [[nodiscard]] const std::string& source() const noexcept { return source_; }

    /// Plain value. Throws Error(Domain) outside the expression's domain.
    [[nodiscard]] double operator()(double t) const;

    /// Throws Error(Domain) when t0 is outside the domain and
    /// Error(OrderOverflow) when order exceeds `order_cap`.
    [[nodiscard]] TaylorJet taylor(double t0, int order, int order_cap = kDefaultOrderCap) const;

    /// f^(k)(t0)
    [[nodiscard]] double deriv(double t0, int k) const;

    /// True when the expression does not mention `t`.
    [[nodiscard]] bool is_constant() const noexcept;

private:
    ExprFunction(std::shared_ptr<const detail::Node> root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    std::shared_ptr<const detail::Node> root_;
    std::string source_;
};

inline ExprFunction parse(std::string_view text) { return ExprFunction::parse(text); }

inline TaylorJet taylor(const ExprFunction& fn, double t0, int order) {
    return fn.taylor(t0, order);
}

inline double deriv(const ExprFunction& fn, double t0, int k) { return fn.deriv(t0, k); }

}  // namespace ineq
