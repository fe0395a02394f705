#pragma once

// Sequence expressions in one free variable n:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | atom ('^' exponent)?
//   atom   := integer | ident | '(' expr ')'
//           | binom(expr, expr) | fact(expr) | factorial(expr)
//           | pow(expr, expr) | sum(ident, expr, expr, expr)
//
// `exponent` is an unsigned integer, an identifier or a parenthesized
// expression. Identifiers other than n must be bound by an enclosing sum.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cyseries/numkernel.hpp"

namespace cys {

class SeqExpr {
public:
    enum class Kind { integer, variable, add, sub, mul, div, neg, pow, binom, fact, sum };

    struct Node {
        Kind kind;
        Integer value;     // integer literal
        std::string name;  // variable name, or the bound variable of a sum
        std::vector<std::shared_ptr<const Node>> kids;
    };

    static SeqExpr parse(std::string_view text);

    /// Canonical text; parse(str()) reproduces the same tree.
    std::string str() const;

    /// Exact value; throws PreconditionError if it is not an integer.
    Integer eval(long n) const;
    /// Exact value, rational intermediate results allowed.
    Rational eval_rational(long n) const;
    /// eval(n) mod modulus in [0, modulus), via prime-power residues with
    /// p-adic valuation tracking; falls back to exact evaluation where needed.
    Integer eval_mod(long n, const Integer& modulus) const;

    const Node& root() const { return *root_; }
    friend bool operator==(const SeqExpr& a, const SeqExpr& b);

private:
    explicit SeqExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

/// Multiplicative inverse modulo m; throws PreconditionError when none exists.
Integer mod_inverse(const Integer& a, const Integer& m);

/// Rational x reduced modulo m (denominator inverted); throws when not invertible.
Integer mod_rational(const Rational& x, const Integer& m);

}  // namespace cys
