#include "cyseries/series.hpp"

#include <cmath>

namespace cys {

// ---- EpsPoly ---------------------------------------------------------------

EpsPoly::EpsPoly(int degree) : degree_(degree) {
    if (degree < 0 || degree > kMaxDegree) throw PreconditionError("EpsPoly degree must be in [0, 4]");
}

EpsPoly::EpsPoly(const Rational& constant, int degree) : EpsPoly(degree) { c_[0] = constant; }

EpsPoly EpsPoly::shifted_power(const Rational& x, int power, int degree) {
    EpsPoly r(Rational(1), degree);
    EpsPoly step(x, degree);
    if (degree >= 1) step[1] = Rational(1);
    for (int k = 0; k < power; ++k) r *= step;
    return r;
}

bool EpsPoly::is_zero() const {
    for (int i = 0; i <= degree_; ++i) {
        if (!c_[static_cast<std::size_t>(i)].is_zero()) return false;
    }
    return true;
}

EpsPoly EpsPoly::inverse() const {
    if (c_[0].is_zero()) throw PreconditionError("EpsPoly inverse needs a nonzero constant term");
    EpsPoly r(degree_);
    r[0] = c_[0].inverse();
    for (int k = 1; k <= degree_; ++k) {
        Rational acc;
        for (int j = 1; j <= k; ++j) acc += (*this)[j] * r[k - j];
        r[k] = -acc * r[0];
    }
    return r;
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
    degree_ = std::min(degree_, o.degree_);
    for (int i = 0; i <= degree_; ++i) (*this)[i] += o[i];
    for (int i = degree_ + 1; i <= kMaxDegree; ++i) (*this)[i] = Rational(0);
    return *this;
}

EpsPoly& EpsPoly::operator-=(const EpsPoly& o) {
    degree_ = std::min(degree_, o.degree_);
    for (int i = 0; i <= degree_; ++i) (*this)[i] -= o[i];
    for (int i = degree_ + 1; i <= kMaxDegree; ++i) (*this)[i] = Rational(0);
    return *this;
}

EpsPoly& EpsPoly::operator*=(const EpsPoly& o) {
    const int d = std::min(degree_, o.degree_);
    EpsPoly r(d);
    for (int i = 0; i <= d; ++i) {
        if ((*this)[i].is_zero()) continue;
        for (int j = 0; i + j <= d; ++j) r[i + j] += (*this)[i] * o[j];
    }
    return *this = r;
}

EpsPoly& EpsPoly::operator*=(const Rational& s) {
    for (int i = 0; i <= degree_; ++i) (*this)[i] *= s;
    return *this;
}

EpsPoly operator-(const EpsPoly& a) {
    EpsPoly r(a.degree_);
    for (int i = 0; i <= a.degree_; ++i) r[i] = -a[i];
    return r;
}

bool operator==(const EpsPoly& a, const EpsPoly& b) {
    const int d = std::min(a.degree_, b.degree_);
    for (int i = 0; i <= d; ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

// ---- products --------------------------------------------------------------

namespace detail {

namespace {

/// Integer numerators over the lcm of the denominators.
std::pair<std::vector<Integer>, Integer> common_denominator(std::span<const Rational> v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
    std::vector<Integer> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Integer q;
        mpz_divexact(q.get_mpz_t(), l.get_mpz_t(), v[i].raw().get_den_mpz_t());
        out[i] = v[i].raw().get_num() * q;
    }
    return {std::move(out), l};
}

}  // namespace

std::vector<Integer> integer_product(std::span<const Integer> a, std::span<const Integer> b) {
    const std::size_t len = std::min(a.size(), b.size());
    if (len <= 16) return truncated_product<Integer>(a.subspan(0, len), b.subspan(0, len));
    std::size_t abits = 0, bbits = 0;
    for (std::size_t i = 0; i < len; ++i) {
        abits = std::max(abits, mpz_sizeinbase(a[i].get_mpz_t(), 2));
        bbits = std::max(bbits, mpz_sizeinbase(b[i].get_mpz_t(), 2));
    }
    // Coefficients of the full product stay below len * 2^(abits + bbits);
    // slots are whole limbs so packing is a copy.
    std::size_t lenbits = 1;
    while ((std::size_t{1} << lenbits) < len) ++lenbits;
    const std::size_t need = abits + bbits + lenbits + 2;
    const std::size_t w = (need + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    auto pack_sign = [&](std::span<const Integer> v, int sign) {
        Integer x;
        mp_limb_t* out = mpz_limbs_write(x.get_mpz_t(), static_cast<mp_size_t>(len * w));
        std::fill(out, out + len * w, mp_limb_t{0});
        for (std::size_t i = 0; i < len; ++i) {
            if (mpz_sgn(v[i].get_mpz_t()) != sign) continue;
            const std::size_t n = mpz_size(v[i].get_mpz_t());
            const mp_limb_t* src = mpz_limbs_read(v[i].get_mpz_t());
            std::copy(src, src + n, out + i * w);
        }
        mp_size_t used = static_cast<mp_size_t>(len * w);
        while (used > 0 && out[used - 1] == 0) --used;
        mpz_limbs_finish(x.get_mpz_t(), used);
        return x;
    };
    auto pack = [&](std::span<const Integer> v) { return Integer(pack_sign(v, 1) - pack_sign(v, -1)); };
    Integer x = pack(a) * pack(b);

    const int sign = mpz_sgn(x.get_mpz_t());
    std::vector<mp_limb_t> limbs(len * w + 1, 0);
    {
        const std::size_t n = std::min(mpz_size(x.get_mpz_t()), limbs.size());
        const mp_limb_t* src = mpz_limbs_read(x.get_mpz_t());
        std::copy(src, src + n, limbs.begin());
    }
    Integer half, full;
    mpz_setbit(half.get_mpz_t(), w * GMP_NUMB_BITS - 1);
    mpz_setbit(full.get_mpz_t(), w * GMP_NUMB_BITS);
    std::vector<Integer> out(len);
    bool carry = false;
    for (std::size_t i = 0; i < len; ++i) {
        Integer r;
        mp_size_t used = static_cast<mp_size_t>(w);
        const mp_limb_t* src = limbs.data() + i * w;
        while (used > 0 && src[used - 1] == 0) --used;
        if (used > 0) {
            mp_limb_t* dst = mpz_limbs_write(r.get_mpz_t(), used);
            std::copy(src, src + used, dst);
            mpz_limbs_finish(r.get_mpz_t(), used);
        }
        if (carry) r += 1;
        carry = r >= half;
        if (carry) r -= full;
        out[i] = sign < 0 ? Integer(-r) : r;
    }
    return out;
}

std::vector<Rational> rational_product(std::span<const Rational> a, std::span<const Rational> b) {
    const std::size_t len = std::min(a.size(), b.size());
    auto [ai, ad] = common_denominator(a.subspan(0, len));
    auto [bi, bd] = common_denominator(b.subspan(0, len));
    std::vector<Integer> prod = integer_product(ai, bi);
    const Integer den = ad * bd;
    std::vector<Rational> out;
    out.reserve(len);
    for (auto& p : prod) out.emplace_back(p, den);
    return out;
}

}  // namespace detail

// ---- composition and reversion ---------------------------------------------

namespace {

void require_no_constant(const RationalSeries& inner) {
    if (!inner[0].is_zero()) throw PreconditionError("compose: inner series must have zero constant term");
}

void require_no_constant(const RealSeries& inner) {
    if (!inner[0].is_zero()) throw PreconditionError("compose: inner series must have zero constant term");
}

}  // namespace

template <>
RationalSeries compose(const RationalSeries& outer, const RationalSeries& inner) {
    require_no_constant(inner);
    const int n = std::min(outer.order(), inner.order());
    // outer(P/d)*d^n*L = sum_k O_k P^k d^(n-k), evaluated by Horner over the integers.
    std::vector<Rational> ov(outer.coeffs().begin(), outer.coeffs().begin() + n + 1);
    std::vector<Rational> iv(inner.coeffs().begin(), inner.coeffs().begin() + n + 1);
    Integer lo = 1, li = 1;
    for (const auto& x : ov) mpz_lcm(lo.get_mpz_t(), lo.get_mpz_t(), x.raw().get_den_mpz_t());
    for (const auto& x : iv) mpz_lcm(li.get_mpz_t(), li.get_mpz_t(), x.raw().get_den_mpz_t());
    std::vector<Integer> o(ov.size()), p(iv.size());
    for (std::size_t i = 0; i < ov.size(); ++i) o[i] = ov[i].raw().get_num() * (lo / ov[i].raw().get_den());
    for (std::size_t i = 0; i < iv.size(); ++i) p[i] = iv[i].raw().get_num() * (li / iv[i].raw().get_den());

    // Baby steps P^0..P^m, then Horner in Q = P^m over blocks of m outer
    // coefficients. With L = li^m and J = n/m:
    //   outer(P/li) * lo * li^((J+1)m) = sum_j B_j Q^j L^(J-j),
    //   B_j = sum_i O_{jm+i} li^(m-i) P^i.
    const std::size_t len = static_cast<std::size_t>(n + 1);
    const int m = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n + 1)))));
    const int J = n / m;
    std::vector<std::vector<Integer>> pw(static_cast<std::size_t>(m + 1));
    pw[0].assign(len, Integer(0));
    pw[0][0] = 1;
    pw[1] = p;
    for (int i = 2; i <= m; ++i) pw[static_cast<std::size_t>(i)] = detail::integer_product(pw[static_cast<std::size_t>(i - 1)], p);
    std::vector<Integer> lipow(static_cast<std::size_t>(m + 1));
    lipow[0] = 1;
    for (int i = 1; i <= m; ++i) lipow[static_cast<std::size_t>(i)] = lipow[static_cast<std::size_t>(i - 1)] * li;
    const Integer L = lipow[static_cast<std::size_t>(m)];

    auto block = [&](int j) {
        std::vector<Integer> b(len, Integer(0));
        for (int i = 0; i < m; ++i) {
            const int k = j * m + i;
            if (k > n || o[static_cast<std::size_t>(k)] == 0) continue;
            const Integer s = o[static_cast<std::size_t>(k)] * lipow[static_cast<std::size_t>(m - i)];
            const auto& P = pw[static_cast<std::size_t>(i)];
            for (std::size_t t = 0; t < len; ++t) {
                if (P[t] != 0) mpz_addmul(b[t].get_mpz_t(), s.get_mpz_t(), P[t].get_mpz_t());
            }
        }
        return b;
    };

    std::vector<Integer> acc = block(J);
    Integer Lpow = 1;
    for (int j = J - 1; j >= 0; --j) {
        acc = detail::integer_product(acc, pw[static_cast<std::size_t>(m)]);
        Lpow *= L;
        const std::vector<Integer> b = block(j);
        for (std::size_t t = 0; t < len; ++t) {
            if (b[t] != 0) mpz_addmul(acc[t].get_mpz_t(), b[t].get_mpz_t(), Lpow.get_mpz_t());
        }
    }
    Integer den = lo;
    for (int j = 0; j <= J; ++j) den *= L;
    std::vector<Rational> out;
    out.reserve(acc.size());
    for (auto& x : acc) out.emplace_back(x, den);
    return RationalSeries(std::move(out));
}

template <>
RealSeries compose(const RealSeries& outer, const RealSeries& inner) {
    require_no_constant(inner);
    const int n = std::min(outer.order(), inner.order());
    const RealSeries g = inner.truncated(n);
    RealSeries acc = RealSeries::constant(outer[n], n);
    for (int k = n - 1; k >= 0; --k) {
        acc = mul(acc, g);
        acc[0] += outer[k];
    }
    return acc;
}

namespace {

template <typename S>
PowerSeries<S> revert_impl(const PowerSeries<S>& f) {
    using T = ScalarTraits<S>;
    if (!T::is_zero(f[0])) throw PreconditionError("revert: f[0] must be zero");
    if (f.order() < 1 || T::is_zero(f[1])) throw PreconditionError("revert: f[1] must be invertible");
    const int n = f.order();
    const S one = T::from_long(1, f[1]);
    // f' padded back to order n; its top coefficient is never reached by the correction.
    PowerSeries<S> df(n, f[1]);
    const PowerSeries<S> d = derivative(f);
    for (int i = 0; i <= d.order(); ++i) df[i] = d[i];

    // Newton on F(g) = f(g) - q, doubling the correct order each pass.
    PowerSeries<S> g = PowerSeries<S>::variable(1, f[1]);
    g[1] = one / f[1];
    for (int prec = 1; prec < n;) {
        const int next = std::min(n, 2 * prec);
        PowerSeries<S> gx(next, f[1]);
        for (int i = 0; i <= g.order(); ++i) gx[i] = g[i];
        PowerSeries<S> residual = compose(f.truncated(next), gx);
        residual[1] -= one;
        const PowerSeries<S> slope = compose(df.truncated(next), gx);
        g = gx - div(residual, slope);
        prec = next;
    }
    return g;
}

}  // namespace

template <>
RationalSeries revert(const RationalSeries& f) { return revert_impl(f); }

template <>
RealSeries revert(const RealSeries& f) { return revert_impl(f); }

// ---- exp / log -------------------------------------------------------------

template <>
RationalSeries exp_series(const RationalSeries& f) {
    if (!f[0].is_zero()) throw PreconditionError("exp_series over rationals needs a zero constant term");
    const int n = f.order();
    RationalSeries g(n);
    g[0] = Rational(1);
    // n g_n = sum_k k f_k g_{n-k}
    for (int m = 1; m <= n; ++m) {
        mpq_class acc;
        for (int k = 1; k <= m; ++k) {
            if (f[k].is_zero()) continue;
            acc += f[k].raw() * g[m - k].raw() * k;
        }
        g[m] = Rational(mpq_class(acc / m));
    }
    return g;
}

template <>
RealSeries exp_series(const RealSeries& f) {
    const int n = f.order();
    RealSeries g(n, f[0]);
    g[0] = exp(f[0]);
    for (int m = 1; m <= n; ++m) {
        Real acc(0L, f[0].digits());
        for (int k = 1; k <= m; ++k) acc += f[k] * g[m - k] * static_cast<long>(k);
        g[m] = acc / static_cast<long>(m);
    }
    return g;
}

template <>
RationalSeries log_series(const RationalSeries& f) {
    if (f[0] != Rational(1)) throw PreconditionError("log_series needs constant term 1");
    RationalSeries h = div(theta(f), f);
    for (int m = 1; m <= h.order(); ++m) h[m] /= Rational(m);
    h[0] = Rational(0);
    return h;
}

template <>
RealSeries log_series(const RealSeries& f) {
    if (f[0] != Real(1L, f[0].digits())) throw PreconditionError("log_series needs constant term 1");
    RealSeries h = div(theta(f), f);
    for (int m = 1; m <= h.order(); ++m) h[m] /= static_cast<long>(m);
    h[0] = Real(0L, f[0].digits());
    return h;
}

// ---- numeric evaluation ----------------------------------------------------

RealSeries to_real(const RationalSeries& f, int digits) {
    std::vector<Real> c;
    c.reserve(static_cast<std::size_t>(f.order() + 1));
    for (const auto& x : f.coeffs()) c.emplace_back(x, digits);
    return RealSeries(std::move(c));
}

namespace {

NumericValue evaluate(const RealSeries& f, const Real& x, int tail_window, bool check_relative) {
    const int digits = x.digits();
    const int n = f.order();
    Real value = f[n].with_digits(digits);
    for (int k = n - 1; k >= 0; --k) value = value * x + f[k];

    // Fit a geometric ratio to consecutive nonzero terms of the last window.
    const int first = std::max(0, n - std::max(tail_window, 1));
    Real ratio(0L, digits);
    Real last_term(0L, digits);
    int last_index = -1;
    bool any = false;
    for (int k = first; k <= n; ++k) {
        if (f[k].is_zero()) continue;
        const Real term = abs(f[k] * pow(x, k));
        if (last_index >= 0 && !last_term.is_zero()) {
            Real r = term / last_term;
            if (k - last_index > 1) r = exp(log(r) / static_cast<long>(k - last_index));
            if (!any || r > ratio) ratio = r;
            any = true;
        }
        last_term = term;
        last_index = k;
    }
    Real tail(0L, digits);
    if (any) {
        if (ratio >= 1L) {
            throw NumericError("series evaluation point lies outside the estimated radius of convergence");
        }
        // Remaining terms start at index n+1; last_term sits at last_index <= n.
        tail = last_term * pow(ratio, n + 1 - last_index) / (Real(1L, digits) - ratio);
    }
    if (check_relative && !value.is_zero() && tail > abs(value) * pow10(-10, digits)) {
        throw NumericError("insufficient truncation order: tail estimate " + tail.str(6) + " exceeds 1e-10 of value");
    }
    return {value, tail};
}

}  // namespace

NumericValue eval_numeric(const RealSeries& f, const Real& x, int tail_window) {
    return evaluate(f, x, tail_window, true);
}

NumericValue eval_numeric(const RationalSeries& f, const Real& x, int tail_window) {
    return evaluate(to_real(f, x.digits()), x, tail_window, true);
}

NumericValue eval_with_tail(const RationalSeries& f, const Real& x, int tail_window) {
    return evaluate(to_real(f, x.digits()), x, tail_window, false);
}

}  // namespace cys
