#include "cyseries/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <vector>

namespace cys {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void require_digits(int digits) {
    if (digits < kMinDigits) {
        throw PreconditionError("precision must be at least " + std::to_string(kMinDigits) +
                                " digits, got " + std::to_string(digits));
    }
}

}  // namespace

Integer parse_integer(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) throw PreconditionError("empty integer literal");
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-'))) {
            throw PreconditionError("malformed integer literal '" + std::string(text) + "'");
        }
    }
    return Integer(std::string(text), 10);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

// ---- Rational --------------------------------------------------------------

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::inverse() const {
    if (is_zero()) throw PreconditionError("inverse of zero");
    return Rational(den(), num());
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero rational");
    v_ /= o.v_;
    return *this;
}

std::string Rational::str() const { return v_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ---- Real ------------------------------------------------------------------

mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

void Real::init(int digits) {
    digits_ = digits;
    mpfr_init2(v_, bits_for_digits(digits));
}

Real::Real() {
    init(kMinDigits);
    mpfr_set_zero(v_, 1);
}

Real::Real(long value, int digits) {
    require_digits(digits);
    init(digits);
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(const Integer& value, int digits) {
    require_digits(digits);
    init(digits);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational& value, int digits) {
    require_digits(digits);
    init(digits);
    mpfr_set_q(v_, value.raw().get_mpq_t(), MPFR_RNDN);
}

Real::Real(double value, int digits) {
    require_digits(digits);
    init(digits);
    mpfr_set_d(v_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, int digits) {
    Real r(0L, digits);
    const std::string s(trim(text));
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        throw PreconditionError("malformed real literal '" + s + "'");
    }
    return r;
}

Real::Real(const Real& other) {
    init(other.digits_);
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    init(other.digits_);
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        if (digits_ != other.digits_) {
            mpfr_set_prec(v_, bits_for_digits(other.digits_));
            digits_ = other.digits_;
        }
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    std::swap(digits_, other.digits_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_digits(int digits) const {
    Real r(0L, digits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

long Real::log10_floor() const {
    if (is_zero()) return std::numeric_limits<long>::min() / 4;
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return static_cast<long>(std::floor(std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120));
}

std::string Real::str(int shown) const {
    if (shown <= 0) shown = digits_;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", shown - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Integer Real::round() const {
    Integer out;
    mpfr_t tmp;
    mpfr_init2(tmp, mpfr_get_prec(v_));
    mpfr_round(tmp, v_);
    mpfr_get_z(out.get_mpz_t(), tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return out;
}

#define CYS_REAL_BINOP(op, fn)                                  \
    Real& Real::operator op(const Real& o) {                    \
        if (o.digits_ < digits_) {                              \
            mpfr_prec_round(v_, bits_for_digits(o.digits_), MPFR_RNDN); \
            digits_ = o.digits_;                                \
        }                                                       \
        fn(v_, v_, o.v_, MPFR_RNDN);                            \
        return *this;                                           \
    }

CYS_REAL_BINOP(+=, mpfr_add)
CYS_REAL_BINOP(-=, mpfr_sub)
CYS_REAL_BINOP(*=, mpfr_mul)
CYS_REAL_BINOP(/=, mpfr_div)
#undef CYS_REAL_BINOP

Real& Real::operator*=(long o) {
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long o) {
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
}

Real operator-(const Real& a) {
    Real r(a);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_nan_p(a.v_) || mpfr_nan_p(b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const Real& r) { return os << r.str(); }

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
    Real r(0L, x.digits());
    fn(r.get(), x.get(), MPFR_RNDN);
    return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

Real pow(const Real& x, long exponent) {
    Real r(0L, x.digits());
    mpfr_pow_si(r.get(), x.get(), exponent, MPFR_RNDN);
    return r;
}

Real pow10(long exponent, int digits) {
    Real r(10L, digits);
    mpfr_pow_si(r.get(), r.get(), exponent, MPFR_RNDN);
    return r;
}

// ---- QuadExt ---------------------------------------------------------------

std::pair<Integer, Integer> squarefree_decompose(const Integer& n) {
    if (n == 0) return {Integer(0), Integer(1)};
    Integer rest = ::abs(n);
    Integer s = 1;
    Integer d = n < 0 ? -1 : 1;
    auto take = [&](unsigned long p) {
        int e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) s *= p;
        if (e % 2 == 1) d *= p;
    };
    take(2);
    for (unsigned long p = 3; p <= 1000000UL; p += 2) {
        if (Integer(p) * p > rest) break;
        take(p);
    }
    if (rest > 1) {
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            Integer root;
            mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
            s *= root;
        } else {
            d *= rest;
        }
    }
    return {s, d};
}

QuadExt::QuadExt(const Rational& rat, const Rational& coef, const Integer& disc)
    : rat_(rat), coef_(coef), disc_(1) {
    if (coef_.is_zero()) return;
    if (disc <= 0) throw PreconditionError("QuadExt discriminant must be positive");
    auto [s, d] = squarefree_decompose(disc);
    coef_ *= Rational(s);
    if (d == 1) {
        rat_ += coef_;
        coef_ = Rational(0);
    } else {
        disc_ = d;
    }
}

std::optional<Rational> QuadExt::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return rat_;
}

QuadExt QuadExt::inverse() const {
    const Rational n = norm();
    if (n.is_zero()) throw PreconditionError("inverse of zero surd");
    return QuadExt(rat_ / n, -coef_ / n, disc_);
}

namespace {

Integer common_disc(const QuadExt& a, const QuadExt& b) {
    if (a.is_rational()) return b.disc();
    if (b.is_rational()) return a.disc();
    if (a.disc() != b.disc()) {
        throw PreconditionError("QuadExt arithmetic across different discriminants (" +
                                to_string(a.disc()) + " vs " + to_string(b.disc()) + ")");
    }
    return a.disc();
}

}  // namespace

QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    return QuadExt(a.rat_ + b.rat_, a.coef_ + b.coef_, common_disc(a, b));
}

QuadExt operator-(const QuadExt& a, const QuadExt& b) {
    return QuadExt(a.rat_ - b.rat_, a.coef_ - b.coef_, common_disc(a, b));
}

QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    const Integer d = common_disc(a, b);
    return QuadExt(a.rat_ * b.rat_ + a.coef_ * b.coef_ * Rational(d), a.rat_ * b.coef_ + a.coef_ * b.rat_, d);
}

std::string QuadExt::str() const {
    if (is_rational()) return rat_.str();
    std::string surd = "sqrt(" + to_string(disc_) + ")";
    std::string c = coef_ == Rational(1) ? surd : (coef_ == Rational(-1) ? "-" + surd : coef_.str() + "*" + surd);
    if (rat_.is_zero()) return c;
    if (coef_.sign() < 0) {
        const Rational m = -coef_;
        return rat_.str() + " - " + (m == Rational(1) ? surd : m.str() + "*" + surd);
    }
    return rat_.str() + " + " + c;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.str(); }

// ---- constants -------------------------------------------------------------

Real const_pi(int digits) {
    Real r(0L, digits);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real const_zeta3(int digits) {
    Real r(0L, digits);
    mpfr_zeta_ui(r.get(), 3, MPFR_RNDN);
    return r;
}

Rational bernoulli(int n) {
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    if (n < 0) throw PreconditionError("bernoulli index must be non-negative");
    std::lock_guard lock(mu);
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    while (static_cast<int>(table.size()) <= n) {
        const long m = static_cast<long>(table.size());
        Rational acc;
        Integer binom = 1;  // C(m+1, k)
        for (long k = 0; k < m; ++k) {
            acc += Rational(binom) * table[static_cast<std::size_t>(k)];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        table.push_back(-acc / Rational(m + 1));
    }
    return table[static_cast<std::size_t>(n)];
}

Real hurwitz_zeta3(const Rational& s, int digits) {
    require_digits(digits);
    if (s.sign() <= 0 || s > Rational(1)) throw PreconditionError("hurwitz_zeta3 requires 0 < s <= 1");
    const int work = digits + 10;
    const long cutoff = std::max(50, digits);
    const Real shift(s, work);

    Real sum(0L, work);
    for (long n = 0; n < cutoff; ++n) {
        const Real a = shift + Rational(n);
        sum += Real(1L, work) / (a * a * a);
    }

    const Real a = shift + Rational(cutoff);
    const Real inv = Real(1L, work) / a;
    const Real inv2 = inv * inv;
    sum += inv2 / 2L;
    sum += inv2 * inv / 2L;

    const Real eps = pow10(-digits - 5, work);
    Real power = inv2 * inv2;  // a^{-2k-2} for k = 1
    Real previous;
    for (int k = 1;; ++k) {
        const Real term = Real(bernoulli(2 * k) * Rational(2 * k + 1) / Rational(2), work) * power;
        if (abs(term) < eps) break;
        if (k > 1 && abs(term) > abs(previous)) {
            throw NumericError("Euler-Maclaurin correction diverged before reaching the requested precision");
        }
        sum += term;
        previous = term;
        power *= inv2;
    }
    return sum.with_digits(digits);
}

Real trig_at_rational(TrigKind kind, const Rational& s, int digits) {
    require_digits(digits);
    if (s.sign() <= 0 || s >= Rational(1)) throw PreconditionError("trig_at_rational requires 0 < s < 1");
    if (s == Rational(1, 2)) return Real(kind == TrigKind::sin ? 1L : 0L, digits);
    const int work = digits + 10;
    const Real angle = const_pi(work) * s;
    Real out = kind == TrigKind::sin ? sin(angle) : cos(angle) / sin(angle);
    return out.with_digits(digits);
}

Real quad_value(const QuadExt& x, int digits) {
    Real v(x.rat(), digits);
    if (!x.is_rational()) v += Real(x.coef(), digits) * sqrt(Real(x.disc(), digits));
    return v;
}

}  // namespace cys
