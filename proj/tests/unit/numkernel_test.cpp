#include <gtest/gtest.h>

#include <random>

#include "cyseries/numkernel.hpp"

using namespace cys;

namespace {

// |a - b| < 10^-digits
bool close(const Real& a, const Real& b, int digits) {
    return abs(a - b) < pow10(-digits, std::max(a.digits(), b.digits()));
}

// zeta(3, s) by explicit summation of 2000 terms plus an Euler-Maclaurin tail
// with only the first three correction terms, started far out so that the
// omitted terms are tiny. Independent of the library routine's cutoffs.
Real zeta3_oracle(const Rational& s, int digits) {
    const int wd = digits + 10;
    const long n = 4000;
    Real sum(0L, wd);
    for (long k = 0; k < n; ++k) {
        Real a(Rational(k) + s, wd);
        sum += Real(1L, wd) / (a * a * a);
    }
    Real a(Rational(n) + s, wd);
    Real a2 = a * a;
    // int_a^inf x^-3 + f(a)/2 - f'(a)/12 + f'''(a)/720 - f^(5)(a)/30240 + f^(7)(a)/1209600
    sum += Real(1L, wd) / (2L * a2);
    sum += Real(1L, wd) / (2L * a2 * a);
    sum += Real(1L, wd) / (4L * a2 * a2);
    sum -= Real(1L, wd) / (12L * a2 * a2 * a2);
    Real a8 = a2 * a2 * a2 * a2;
    sum += Real(1L, wd) / (12L * a8);
    sum -= Real(3L, wd) / (20L * a8 * a2);
    return sum;
}

}  // namespace

TEST(Numkernel, PiAt30Digits) {
    Real pi = const_pi(30);
    Real ref = Real::parse("3.14159265358979323846264338328", 30);
    EXPECT_TRUE(close(pi, ref, 29));
}

TEST(Numkernel, PiPrecisionMonotone) {
    EXPECT_TRUE(close(const_pi(20), const_pi(30).with_digits(20), 19));
}

TEST(Numkernel, PiSineResidual) {
    Real pi = const_pi(100);
    EXPECT_LT(abs(sin(pi)), pow10(-95, 100));
}

TEST(Numkernel, Zeta3Tabulated) {
    Real z = const_zeta3(20);
    EXPECT_TRUE(close(z, Real::parse("1.2020569031595942854", 20), 19));
}

TEST(Numkernel, Zeta3EqualsHurwitzAtOne) {
    EXPECT_TRUE(close(const_zeta3(50), hurwitz_zeta3(Rational(1), 50), 48));
}

TEST(Numkernel, Zeta3AgainstSummationOracle) {
    EXPECT_TRUE(close(const_zeta3(40), zeta3_oracle(Rational(1), 40), 38));
}

TEST(Numkernel, HurwitzHalfIsSevenZeta3) {
    for (int d : {30, 60, 120}) {
        Real ratio = hurwitz_zeta3(Rational(1, 2), d) / const_zeta3(d);
        EXPECT_TRUE(close(ratio, Real(7L, d), d - 5)) << d;
    }
}

TEST(Numkernel, HurwitzThirdsSum) {
    const int d = 40;
    Real lhs = zeta3_oracle(Rational(1, 3), d) + zeta3_oracle(Rational(2, 3), d);
    EXPECT_TRUE(close(lhs, 26L * const_zeta3(d), d - 3));
    Real mine = hurwitz_zeta3(Rational(1, 3), d) + hurwitz_zeta3(Rational(2, 3), d);
    EXPECT_TRUE(close(mine, lhs, d - 3));
}

TEST(Numkernel, HurwitzRejectsBadArgument) {
    EXPECT_THROW(hurwitz_zeta3(Rational(0), 30), PreconditionError);
    EXPECT_THROW(hurwitz_zeta3(Rational(3, 2), 30), PreconditionError);
}

TEST(Numkernel, TrigSpecialValues) {
    EXPECT_TRUE(trig_at_rational(TrigKind::cot, Rational(1, 2), 30).is_zero() ||
                abs(trig_at_rational(TrigKind::cot, Rational(1, 2), 30)) < pow10(-29, 30));
    EXPECT_TRUE(close(trig_at_rational(TrigKind::sin, Rational(1, 2), 30), Real(1L, 30), 29));
    EXPECT_TRUE(close(trig_at_rational(TrigKind::cot, Rational(1, 4), 30), Real(1L, 30), 28));
}

TEST(Numkernel, QuadValues) {
    EXPECT_TRUE(close(quad_value(QuadExt(0, 1, Integer(5)), 30), sqrt(Real(5L, 30)), 29));
    Real v = quad_value(QuadExt(56, -25, Integer(5)), 40);
    EXPECT_TRUE(close(v, Real(56L, 40) - 25L * sqrt(Real(5L, 40)), 35));
    EXPECT_NEAR(v.to_double(), 0.09830056, 1e-7);
    EXPECT_TRUE(close(quad_value(QuadExt(3), 30), Real(3L, 30), 29));
}

TEST(Numkernel, QuadExtNormalizes) {
    QuadExt x(1, 1, Integer(8));  // 1 + sqrt(8) = 1 + 2 sqrt 2
    EXPECT_EQ(x.disc(), 2);
    EXPECT_EQ(x.coef(), Rational(2));
    QuadExt y(1, 3, Integer(4));  // 1 + 3*2 = 7
    EXPECT_TRUE(y.is_rational());
    EXPECT_EQ(y.rat(), Rational(7));
    QuadExt s(0, 1, Integer(5));
    EXPECT_EQ(s * s, QuadExt(5));
    EXPECT_EQ(s / s, QuadExt(1));
    EXPECT_THROW(QuadExt(0, 1, Integer(2)) + QuadExt(0, 1, Integer(3)), PreconditionError);
}

TEST(Numkernel, RationalArithmeticExactRandomized) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-100000, 100000);
    for (int i = 0; i < 500; ++i) {
        long b = dist(rng), d = dist(rng);
        if (b == 0) b = 1;
        if (d == 0) d = 3;
        Rational x(Integer(dist(rng)), Integer(b));
        Rational y(Integer(dist(rng)), Integer(d));
        EXPECT_EQ((x + y) - y, x);
        EXPECT_GT(x.den(), 0);
    }
    EXPECT_EQ(Rational(0).den(), 1);
    EXPECT_EQ(Rational::parse("-6/8"), Rational(Integer(-3), Integer(4)));
}

TEST(Numkernel, RealPrecisionIsMinimumOfOperands) {
    Real a(1L, 30), b(3L, 60);
    EXPECT_EQ((a / b).digits(), 30);
    EXPECT_THROW(Real(1L, 10), PreconditionError);
}

TEST(Numkernel, DoublingPrecisionConsistency) {
    for (int d : {30, 60}) {
        Real lo = exp(const_pi(d) / 7L) * log(Real(3L, d));
        Real hi = exp(const_pi(2 * d) / 7L) * log(Real(3L, 2 * d));
        EXPECT_TRUE(close(lo, hi.with_digits(d), d - 3));
        Real zl = hurwitz_zeta3(Rational(1, 5), d);
        Real zh = hurwitz_zeta3(Rational(1, 5), 2 * d);
        EXPECT_TRUE(close(zl, zh.with_digits(d), d - 4));
    }
}

TEST(Numkernel, SquarefreeAndBernoulli) {
    auto [s, d] = squarefree_decompose(Integer(72));
    EXPECT_EQ(s, 6);
    EXPECT_EQ(d, 2);
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(12), Rational(Integer(-691), Integer(2730)));
    EXPECT_EQ(bernoulli(7), Rational(0));
}
