#pragma once

// Dense truncated power series sum_{n<=N} c_n z^n over a generic scalar.
//
// Arithmetic between series of different truncation orders truncates to the
// smaller order. Scalars supported: Rational, Real and EpsPoly.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "cyseries/numkernel.hpp"

namespace cys {

/// Polynomial in eps truncated after eps^degree (degree <= 4).
class EpsPoly {
public:
    static constexpr int kMaxDegree = 4;

    explicit EpsPoly(int degree = kMaxDegree);
    EpsPoly(const Rational& constant, int degree);
    /// (x + eps)^power
    static EpsPoly shifted_power(const Rational& x, int power, int degree);

    int degree() const noexcept { return degree_; }
    const Rational& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    Rational& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    bool is_zero() const;
    /// Multiplicative inverse as an eps-series; requires a nonzero constant term.
    EpsPoly inverse() const;

    EpsPoly& operator+=(const EpsPoly& o);
    EpsPoly& operator-=(const EpsPoly& o);
    EpsPoly& operator*=(const EpsPoly& o);
    EpsPoly& operator*=(const Rational& s);

    friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
    friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
    friend EpsPoly operator*(EpsPoly a, const EpsPoly& b) { return a *= b; }
    friend EpsPoly operator*(EpsPoly a, const Rational& s) { return a *= s; }
    friend EpsPoly operator-(const EpsPoly& a);
    friend bool operator==(const EpsPoly& a, const EpsPoly& b);

private:
    std::array<Rational, kMaxDegree + 1> c_{};
    int degree_;
};

/// How a scalar type produces zero/one compatible with an existing value
/// (same precision for Real, same truncation degree for EpsPoly).
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Integer> {
    static Integer zero_like(const Integer&) { return Integer(0); }
    static Integer from_long(long v, const Integer&) { return Integer(v); }
    static bool is_zero(const Integer& x) { return x == 0; }
};

template <>
struct ScalarTraits<Rational> {
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational from_long(long v, const Rational&) { return Rational(v); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
};

template <>
struct ScalarTraits<Real> {
    static Real zero_like(const Real& x) { return Real(0L, x.digits()); }
    static Real from_long(long v, const Real& x) { return Real(v, x.digits()); }
    static bool is_zero(const Real& x) { return x.is_zero(); }
};

template <>
struct ScalarTraits<EpsPoly> {
    static EpsPoly zero_like(const EpsPoly& x) { return EpsPoly(x.degree()); }
    static EpsPoly from_long(long v, const EpsPoly& x) { return EpsPoly(Rational(v), x.degree()); }
    static bool is_zero(const EpsPoly& x) { return x.is_zero(); }
};

/// Multiplication switches from schoolbook to Karatsuba above this order.
inline constexpr int kKaratsubaThreshold = 128;

template <typename S>
class PowerSeries {
public:
    using Traits = ScalarTraits<S>;

    /// The zero series of the given order; `like` fixes precision/degree of the scalars.
    explicit PowerSeries(int order = 0, const S& like = S{})
        : c_(static_cast<std::size_t>(order + 1), Traits::zero_like(like)) {}
    explicit PowerSeries(std::vector<S> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw PreconditionError("power series needs at least one coefficient");
    }

    /// The series z truncated at `order`.
    static PowerSeries variable(int order, const S& like = S{}) {
        PowerSeries s(order, like);
        if (order >= 1) s.c_[1] = Traits::from_long(1, like);
        return s;
    }
    static PowerSeries constant(const S& value, int order) {
        PowerSeries s(order, value);
        s.c_[0] = value;
        return s;
    }

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const S& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
    S& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
    std::span<const S> coeffs() const noexcept { return c_; }
    const S& like() const noexcept { return c_.front(); }

    PowerSeries truncated(int order) const {
        if (order > this->order()) throw PreconditionError("cannot extend a truncated series");
        return PowerSeries(std::vector<S>(c_.begin(), c_.begin() + order + 1));
    }

    PowerSeries& operator+=(const PowerSeries& o) {
        shrink_to(o.order());
        for (int i = 0; i <= order(); ++i) (*this)[i] += o[i];
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& o) {
        shrink_to(o.order());
        for (int i = 0; i <= order(); ++i) (*this)[i] -= o[i];
        return *this;
    }
    PowerSeries& operator*=(const S& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, const S& s) { return a *= s; }
    friend PowerSeries operator*(const S& s, PowerSeries a) { return a *= s; }
    friend PowerSeries operator-(const PowerSeries& a) {
        PowerSeries r(a.order(), a.like());
        for (int i = 0; i <= a.order(); ++i) r[i] -= a[i];
        return r;
    }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return mul(a, b); }
    friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return div(a, b); }
    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

private:
    void shrink_to(int order) {
        if (order < this->order()) c_.resize(static_cast<std::size_t>(order + 1), c_.front());
    }

    std::vector<S> c_;
};

using RationalSeries = PowerSeries<Rational>;
using RealSeries = PowerSeries<Real>;

namespace detail {

template <typename S>
void schoolbook(std::span<const S> a, std::span<const S> b, std::span<S> out) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ScalarTraits<S>::is_zero(a[i])) continue;
        const std::size_t lim = std::min(b.size(), out.size() - i);
        for (std::size_t j = 0; j < lim; ++j) out[i + j] += a[i] * b[j];
    }
}

/// Full product of equal-length blocks: out.size() == 2*a.size() - 1.
template <typename S>
void karatsuba(std::span<const S> a, std::span<const S> b, std::span<S> out) {
    const std::size_t n = a.size();
    if (n <= 32) {
        schoolbook(a, b, out);
        return;
    }
    const std::size_t h = n / 2;
    const std::size_t hi = n - h;
    const S zero = ScalarTraits<S>::zero_like(a[0]);
    std::vector<S> a_sum(hi, zero), b_sum(hi, zero);
    for (std::size_t i = 0; i < hi; ++i) {
        a_sum[i] = a[h + i];
        b_sum[i] = b[h + i];
        if (i < h) {
            a_sum[i] += a[i];
            b_sum[i] += b[i];
        }
    }
    std::vector<S> low(2 * h - 1, zero), high(2 * hi - 1, zero), mid(2 * hi - 1, zero);
    karatsuba<S>(a.subspan(0, h), b.subspan(0, h), low);
    karatsuba<S>(a.subspan(h), b.subspan(h), high);
    karatsuba<S>(std::span<const S>(a_sum), std::span<const S>(b_sum), mid);
    for (std::size_t i = 0; i < low.size(); ++i) mid[i] -= low[i];
    for (std::size_t i = 0; i < high.size(); ++i) mid[i] -= high[i];
    for (std::size_t i = 0; i < low.size(); ++i) out[i] += low[i];
    for (std::size_t i = 0; i < high.size(); ++i) out[2 * h + i] += high[i];
    for (std::size_t i = 0; i < mid.size(); ++i) out[h + i] += mid[i];
}

/// Truncated product of coefficient vectors of common length N+1.
template <typename S>
std::vector<S> truncated_product(std::span<const S> a, std::span<const S> b) {
    const std::size_t len = std::min(a.size(), b.size());
    const S zero = ScalarTraits<S>::zero_like(a[0]);
    if (static_cast<int>(len) - 1 <= kKaratsubaThreshold) {
        std::vector<S> out(len, zero);
        schoolbook(a.subspan(0, len), b.subspan(0, len), std::span<S>(out));
        return out;
    }
    std::vector<S> full(2 * len - 1, zero);
    karatsuba(a.subspan(0, len), b.subspan(0, len), std::span<S>(full));
    full.resize(len, zero);
    return full;
}

/// Truncated product of integer coefficient vectors by Kronecker substitution.
std::vector<Integer> integer_product(std::span<const Integer> a, std::span<const Integer> b);

// Rational products are done on integer numerators over a common denominator.
std::vector<Rational> rational_product(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace detail

template <typename S>
PowerSeries<S> mul(const PowerSeries<S>& a, const PowerSeries<S>& b) {
    if constexpr (std::is_same_v<S, Rational>) {
        return PowerSeries<S>(detail::rational_product(a.coeffs(), b.coeffs()));
    } else {
        return PowerSeries<S>(detail::truncated_product(a.coeffs(), b.coeffs()));
    }
}

/// Multiplicative inverse; requires an invertible constant term.
template <typename S>
PowerSeries<S> inverse(const PowerSeries<S>& f) {
    if (ScalarTraits<S>::is_zero(f[0])) throw PreconditionError("series inverse needs a nonzero constant term");
    const int n = f.order();
    const S one = ScalarTraits<S>::from_long(1, f[0]);
    S inv0 = one;
    if constexpr (std::is_same_v<S, EpsPoly>) {
        inv0 = f[0].inverse();
    } else {
        inv0 = one / f[0];
    }
    // Newton: g <- g (2 - f g), doubling the correct length each step.
    PowerSeries<S> g = PowerSeries<S>::constant(inv0, 0);
    for (int prec = 0; prec < n;) {
        const int next = std::min(n, 2 * prec + 1);
        PowerSeries<S> gx(next, f[0]);
        for (int i = 0; i <= g.order(); ++i) gx[i] = g[i];
        PowerSeries<S> e = -mul(f.truncated(next), gx);
        e[0] += ScalarTraits<S>::from_long(2, f[0]);
        g = mul(gx, e);
        prec = next;
    }
    return g;
}

template <typename S>
PowerSeries<S> div(const PowerSeries<S>& a, const PowerSeries<S>& b) {
    const int n = std::min(a.order(), b.order());
    return mul(a.truncated(n), inverse(b.truncated(n)));
}

/// theta = z d/dz: coefficient n is multiplied by n.
template <typename S>
PowerSeries<S> theta(const PowerSeries<S>& f) {
    PowerSeries<S> r = f;
    for (int n = 0; n <= f.order(); ++n) r[n] *= ScalarTraits<S>::from_long(n, f[n]);
    return r;
}

/// d/dz; the result has order N-1.
template <typename S>
PowerSeries<S> derivative(const PowerSeries<S>& f) {
    if (f.order() == 0) return PowerSeries<S>(0, f.like());
    PowerSeries<S> r(f.order() - 1, f.like());
    for (int n = 1; n <= f.order(); ++n) r[n - 1] = f[n] * ScalarTraits<S>::from_long(n, f[n]);
    return r;
}

/// outer(inner(z)); inner must have zero constant term.
template <typename S>
PowerSeries<S> compose(const PowerSeries<S>& outer, const PowerSeries<S>& inner);

/// Compositional inverse g with f(g(q)) = q; needs f[0] = 0 and f[1] invertible.
template <typename S>
PowerSeries<S> revert(const PowerSeries<S>& f);

/// exp(f); for Rational coefficients f[0] must be zero, for Real the constant
/// is factored out as a scalar exponential.
template <typename S>
PowerSeries<S> exp_series(const PowerSeries<S>& f);

/// log(f); requires f[0] = 1.
template <typename S>
PowerSeries<S> log_series(const PowerSeries<S>& f);

template <>
RationalSeries compose(const RationalSeries& outer, const RationalSeries& inner);
template <>
RealSeries compose(const RealSeries& outer, const RealSeries& inner);
template <>
RationalSeries revert(const RationalSeries& f);
template <>
RealSeries revert(const RealSeries& f);
template <>
RationalSeries exp_series(const RationalSeries& f);
template <>
RealSeries exp_series(const RealSeries& f);
template <>
RationalSeries log_series(const RationalSeries& f);
template <>
RealSeries log_series(const RealSeries& f);

struct NumericValue {
    Real value;
    Real tail_estimate;
};

/// Horner evaluation at x with a geometric tail estimate fitted to the last
/// `tail_window` terms. Throws NumericError when x lies outside the empirical
/// radius or when the tail exceeds 1e-10 of the value.
NumericValue eval_numeric(const RationalSeries& f, const Real& x, int tail_window = 10);
NumericValue eval_numeric(const RealSeries& f, const Real& x, int tail_window = 10);

/// Same evaluation without the 1e-10 relative acceptance check; callers decide
/// what tail is acceptable. Still throws when the terms do not decay.
NumericValue eval_with_tail(const RationalSeries& f, const Real& x, int tail_window = 10);

/// Convert exact coefficients to reals.
RealSeries to_real(const RationalSeries& f, int digits);

}  // namespace cys
