#include <gtest/gtest.h>

#include "cyseries/cyode.hpp"
#include "cyseries/registry.hpp"
#include "test_support.hpp"

using namespace cys;

namespace {

Polynomial theta_power(int k) { return Polynomial::monomial(Rational(1), k); }

// Direct application of sum_m z^m Q_m(theta) to sum y_n z^n: coefficient of z^n.
Rational apply_at(const ThetaOperator& op, const std::vector<Integer>& y, int n) {
    Rational acc(0);
    for (const auto& [m, q] : op.terms()) {
        if (m > n) continue;
        acc += q(Rational(n - m)) * Rational(y[static_cast<std::size_t>(n - m)]);
    }
    return acc;
}

}  // namespace

TEST(Cyode, HypergeometricOperatorCase3) {
    ThetaOperator op = hypergeometric_operator(find_case("t3"));
    EXPECT_EQ(op.q(0), theta_power(5));
    Polynomial half = Polynomial::linear(Rational(1, 2));
    EXPECT_EQ(op.q(1), half * half * half * half * half * Rational(-1024));
}

TEST(Cyode, OperatorAnnihilatesCentralBinomialFifthPowers) {
    ThetaOperator op = hypergeometric_operator(find_case("t3"));
    std::vector<Integer> y;
    for (int n = 0; n <= 12; ++n) {
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), 5);
        y.push_back(p);
    }
    for (int n = 0; n <= 12; ++n) EXPECT_TRUE(apply_at(op, y, n).is_zero()) << n;
}

TEST(Cyode, PochhammerFirstTermCase1) {
    EXPECT_EQ(pochhammer_term(find_case("t1"), 1), Rational(240));
    EXPECT_EQ(SeqExpr::parse(find_case("t1").binomial_form).eval(1), 240);
}

TEST(Cyode, PochhammerMatchesBinomialForms) {
    for (const auto& c : builtin_cases()) {
        SeqExpr e = SeqExpr::parse(c.binomial_form);
        for (int n = 0; n <= 20; ++n) EXPECT_EQ(pochhammer_term(c, n), Rational(e.eval(n))) << c.id << " n=" << n;
    }
}

TEST(Cyode, MumCheck) {
    for (const auto& c : builtin_cases()) EXPECT_TRUE(check_mum(hypergeometric_operator(c))) << c.id;
    Polynomial t1 = Polynomial::linear(Rational(1));
    std::map<int, Polynomial> terms{{0, theta_power(4) - theta_power(3)}, {1, t1 * t1 * t1 * t1 * Rational(-1)}};
    EXPECT_FALSE(check_mum(ThetaOperator(4, terms)));
    EXPECT_THROW(frobenius_solve(ThetaOperator(4, terms), 5), PreconditionError);
}

TEST(Cyode, ConditionTwoOnDzForms) {
    DzOperator zero{{Polynomial(), Polynomial(), Polynomial(), Polynomial(), Polynomial::constant(Rational(1))}};
    EXPECT_TRUE(check_condition_2(zero));
    DzOperator c1{{Polynomial(), Polynomial::constant(Rational(1)), Polynomial(), Polynomial(),
                   Polynomial::constant(Rational(1))}};
    EXPECT_FALSE(check_condition_2(c1));
}

TEST(Cyode, ConditionTwoOnQuinticOperator) {
    // theta^4 - 5z(5 theta+1)(5 theta+2)(5 theta+3)(5 theta+4)
    Polynomial q1 = Polynomial({Rational(1), Rational(5)}) * Polynomial({Rational(2), Rational(5)}) *
                    Polynomial({Rational(3), Rational(5)}) * Polynomial({Rational(4), Rational(5)}) * Rational(-5);
    ThetaOperator quintic(4, {{0, theta_power(4)}, {1, q1}});
    EXPECT_TRUE(check_condition_2(quintic));
    // Perturbing a single coefficient breaks it.
    ThetaOperator broken(4, {{0, theta_power(4)}, {1, q1 + theta_power(2)}});
    EXPECT_FALSE(check_condition_2(broken));
}

TEST(Cyode, ConditionTwoFiveHoldsForAllRows) {
    for (const auto& c : builtin_cases()) EXPECT_TRUE(check_condition_25(hypergeometric_operator(c))) << c.id;
}

TEST(Cyode, ConditionTwoFiveHoldsForOperatorFiles) {
    for (const auto& id : test::operator_ids()) EXPECT_TRUE(check_condition_25(test::operator_file(id).op)) << id;
}

TEST(Cyode, ConditionTwoFiveScalarMultipleAndCounterexample) {
    // (1 - z) theta^5 has the normalized coefficients of theta^5, so it satisfies the condition.
    ThetaOperator scaled(5, {{0, theta_power(5)}, {1, theta_power(5) * Rational(-1)}});
    EXPECT_TRUE(check_condition_25(scaled));
    Polynomial t1 = Polynomial::linear(Rational(1));
    ThetaOperator shifted(5, {{0, theta_power(5)}, {1, t1 * t1 * t1 * t1 * t1 * Rational(-1)}});
    EXPECT_TRUE(check_condition_25(shifted));
    ThetaOperator t3 = hypergeometric_operator(find_case("t3"));
    ThetaOperator broken(5, {{0, theta_power(5)}, {1, t3.q(1) + theta_power(2)}});
    EXPECT_FALSE(check_condition_25(broken));
}

TEST(Cyode, DzFormOfThetaPower) {
    // theta^3 = z^3 D^3 + 3 z^2 D^2 + z D
    DzOperator d = to_dz_form(ThetaOperator(3, {{0, theta_power(3)}}));
    EXPECT_EQ(d.coeffs[3], Polynomial::monomial(Rational(1), 3));
    EXPECT_EQ(d.coeffs[2], Polynomial::monomial(Rational(3), 2));
    EXPECT_EQ(d.coeffs[1], Polynomial::monomial(Rational(1), 1));
    EXPECT_TRUE(d.coeffs[0].is_zero());
}

TEST(Cyode, FrobeniusCase3) {
    FrobeniusBasis F = frobenius_solve(hypergeometric_operator(find_case("t3")), 10);
    ASSERT_EQ(F.a.size(), 5u);
    EXPECT_EQ(F.a[0][0], Rational(1));
    EXPECT_EQ(F.a[0][1], Rational(32));
    EXPECT_EQ(F.a[0][2], Rational(7776));
    for (int i = 1; i < 5; ++i) EXPECT_TRUE(F.a[static_cast<std::size_t>(i)][0].is_zero());
    // eps-expansion of 1024 (eps+1/2)^5/(eps+1)^5, computed symbolically offline
    EXPECT_EQ(F.a[1][1], Rational(160));
    EXPECT_EQ(F.a[2][1], Rational(160));
    EXPECT_EQ(F.a[3][1], Rational(-160));
    EXPECT_EQ(F.a[4][1], Rational(0));
}

TEST(Cyode, RecurrenceResidualVanishes) {
    for (const auto& c : builtin_cases()) {
        ThetaOperator op = hypergeometric_operator(c);
        EXPECT_TRUE(recurrence_residual_vanishes(op, frobenius_coefficients(op, 20))) << c.id;
    }
    for (const auto& id : test::operator_ids()) {
        ThetaOperator op = test::operator_file(id).op;
        auto A = frobenius_coefficients(op, 20);
        EXPECT_TRUE(recurrence_residual_vanishes(op, A)) << id;
        A[7][2] += Rational(1);
        EXPECT_FALSE(recurrence_residual_vanishes(op, A)) << id;
    }
}

TEST(Cyode, OperatorFilesGenerateTheirSequences) {
    for (const auto& id : test::operator_ids()) {
        CaseEntry e = test::operator_file(id);
        ASSERT_TRUE(e.seq) << id;
        FrobeniusBasis F = frobenius_solve(e.op, 25);
        for (int n = 0; n <= 25; ++n) EXPECT_EQ(F.a[0][n], Rational(e.seq->eval(n))) << id << " n=" << n;
    }
}

TEST(Cyode, PolynomialBasics) {
    Polynomial p({Rational(1), Rational(2), Rational(3)});
    EXPECT_EQ(p(Rational(2)), Rational(17));
    EXPECT_EQ(p.derivative(), Polynomial({Rational(2), Rational(6)}));
    EpsPoly v = p.at_shifted(Rational(2), 2);
    EXPECT_EQ(v[0], Rational(17));
    EXPECT_EQ(v[1], Rational(14));
    EXPECT_EQ(v[2], Rational(3));
    EXPECT_THROW(ThetaOperator(5, {{1, p}}), PreconditionError);
}
