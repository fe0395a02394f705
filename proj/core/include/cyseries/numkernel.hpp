#pragma once

// Exact rationals, arbitrary-precision reals, quadratic surds and the special
// constants consumed by the rest of the library.
//
// Every Real carries its own decimal precision. Binary operations produce a
// result at the smaller of the operand precisions; there is no ambient global
// precision.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

#include "cyseries/error.hpp"

namespace cys {

using Integer = mpz_class;

/// Smallest precision (decimal digits) accepted by Real.
inline constexpr int kMinDigits = 20;

Integer parse_integer(std::string_view text);
std::string to_string(const Integer& value);

class Rational {
public:
    Rational() = default;
    Rational(long value) : v_(value) {}  // NOLINT: implicit from integers is intended
    Rational(int value) : v_(static_cast<long>(value)) {}  // NOLINT
    Rational(const Integer& value) : v_(value) {}  // NOLINT
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& value) : v_(value) { v_.canonicalize(); }

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    const mpq_class& raw() const noexcept { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    Rational abs() const;
    Rational inverse() const;
    Rational pow(long exponent) const;
    double to_double() const { return v_.get_d(); }
    std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Arbitrary-precision real number with an explicit precision in decimal digits.
class Real {
public:
    Real();
    Real(long value, int digits);
    Real(int value, int digits) : Real(static_cast<long>(value), digits) {}
    Real(const Integer& value, int digits);
    Real(const Rational& value, int digits);
    Real(double value, int digits);
    static Real parse(std::string_view text, int digits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    int digits() const noexcept { return digits_; }
    /// The same value rounded (or zero-extended) to another precision.
    Real with_digits(int digits) const;

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// floor(log10|x|); a very negative number for zero.
    long log10_floor() const;
    /// Scientific notation with `shown` significant digits (default: all).
    std::string str(int shown = 0) const;
    /// Nearest integer (ties away from zero).
    Integer round() const;

    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_ptr get() noexcept { return v_; }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator*=(long o);
    Real& operator/=(long o);

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator*(Real a, long b) { return a *= b; }
    friend Real operator*(long b, Real a) { return a *= b; }
    friend Real operator/(Real a, long b) { return a /= b; }
    friend Real operator+(Real a, const Rational& b) { return a += Real(b, a.digits_); }
    friend Real operator-(Real a, const Rational& b) { return a -= Real(b, a.digits_); }
    friend Real operator*(Real a, const Rational& b) { return a *= Real(b, a.digits_); }
    friend Real operator/(Real a, const Rational& b) { return a /= Real(b, a.digits_); }
    friend Real operator*(const Rational& b, Real a) { return a *= Real(b, a.digits_); }
    friend Real operator-(const Real& a);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend std::partial_ordering operator<=>(const Real& a, long b);

private:
    void init(int digits);

    mpfr_t v_;
    int digits_;
};

std::ostream& operator<<(std::ostream& os, const Real& r);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, long exponent);
/// 10^exponent at the given precision.
Real pow10(long exponent, int digits);

/// Binary precision used for a given decimal precision (includes guard bits).
mpfr_prec_t bits_for_digits(int digits);

/// rat + coef*sqrt(disc) with disc squarefree; disc == 1 forces coef == 0.
class QuadExt {
public:
    QuadExt() : disc_(1) {}
    QuadExt(const Rational& value) : rat_(value), disc_(1) {}  // NOLINT
    QuadExt(long value) : rat_(value), disc_(1) {}  // NOLINT
    /// `disc` may carry square factors; they are pulled into `coef`.
    QuadExt(const Rational& rat, const Rational& coef, const Integer& disc);

    const Rational& rat() const noexcept { return rat_; }
    const Rational& coef() const noexcept { return coef_; }
    const Integer& disc() const noexcept { return disc_; }
    bool is_rational() const { return coef_.is_zero(); }
    bool is_zero() const { return rat_.is_zero() && coef_.is_zero(); }
    std::optional<Rational> as_rational() const;

    QuadExt conjugate() const { return QuadExt(rat_, -coef_, disc_); }
    /// Field norm rat^2 - coef^2 * disc.
    Rational norm() const { return rat_ * rat_ - coef_ * coef_ * Rational(disc_); }
    QuadExt inverse() const;
    std::string str() const;

    friend QuadExt operator+(const QuadExt& a, const QuadExt& b);
    friend QuadExt operator-(const QuadExt& a, const QuadExt& b);
    friend QuadExt operator*(const QuadExt& a, const QuadExt& b);
    friend QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.inverse(); }
    friend QuadExt operator-(const QuadExt& a) { return QuadExt(-a.rat_, -a.coef_, a.disc_); }
    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.rat_ == b.rat_ && a.coef_ == b.coef_ && (a.coef_.is_zero() || a.disc_ == b.disc_);
    }

private:
    Rational rat_;
    Rational coef_;
    Integer disc_;
};

std::ostream& operator<<(std::ostream& os, const QuadExt& q);

/// Writes |n| = s^2 * d with d squarefree; returns {s, d} (sign of n goes to d).
/// Trial division to 10^6; a cofactor beyond that is kept whole unless it is a perfect square.
std::pair<Integer, Integer> squarefree_decompose(const Integer& n);

// ---- constants and special functions --------------------------------------

Real const_pi(int digits);
Real const_zeta3(int digits);
/// Hurwitz zeta(3, s) = sum_{n>=0} (n+s)^-3 for 0 < s <= 1 by Euler-Maclaurin summation.
Real hurwitz_zeta3(const Rational& s, int digits);

enum class TrigKind { sin, cot };
/// sin(pi*s) or cot(pi*s) for 0 < s < 1.
Real trig_at_rational(TrigKind kind, const Rational& s, int digits);

Real quad_value(const QuadExt& x, int digits);

/// Bernoulli number B_n (B_1 = -1/2), exact.
Rational bernoulli(int n);

}  // namespace cys
