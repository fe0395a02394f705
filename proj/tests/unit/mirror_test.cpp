#include <gtest/gtest.h>

#include "cyseries/mirror.hpp"
#include "cyseries/registry.hpp"
#include "test_support.hpp"

using namespace cys;

namespace {

using Vec = std::vector<Rational>;

// Deliberately naive truncated-series helpers for an independent low-order pipeline.
Vec vmul(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}
Vec vinv(const Vec& a) {
    Vec r(a.size());
    r[0] = a[0].inverse();
    for (std::size_t n = 1; n < a.size(); ++n) {
        Rational s(0);
        for (std::size_t k = 1; k <= n; ++k) s += a[k] * r[n - k];
        r[n] = -s * r[0];
    }
    return r;
}
Vec vsub(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
Vec vtheta(Vec a) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= Rational(static_cast<long>(i));
    return a;
}
Vec vexp(const Vec& f) {  // f[0] == 0, via sum f^k/k!
    Vec r(f.size()), p(f.size());
    p[0] = 1;
    Rational fact(1);
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k > 0) {
            p = vmul(p, f);
            fact *= Rational(static_cast<long>(k));
        }
        for (std::size_t i = 0; i < f.size(); ++i) r[i] += p[i] / fact;
    }
    return r;
}
Vec vcompose(const Vec& f, const Vec& g) {  // g[0] == 0
    Vec r(f.size()), p(f.size());
    p[0] = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k > 0) p = vmul(p, g);
        for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[k] * p[i];
    }
    return r;
}
Vec vrevert(const Vec& f) {  // coefficient matching, one order at a time
    Vec g(f.size());
    g[1] = f[1].inverse();
    for (std::size_t n = 2; n < f.size(); ++n) {
        Vec c = vcompose(f, g);
        g[n] = -c[n] / f[1];
    }
    return g;
}

// T_q for case 3 through z^N from the eps-expansion of 1024^n ((1/2+eps)_n/(1+eps)_n)^5.
Vec case3_T(int N) {
    std::vector<EpsPoly> A{EpsPoly(Rational(1), 4)};
    for (int n = 1; n <= N; ++n) {
        EpsPoly num = EpsPoly::shifted_power(Rational(2 * n - 1, 2), 5, 4) * Rational(1024);
        A.push_back(A.back() * num * EpsPoly::shifted_power(Rational(n), 5, 4).inverse());
    }
    std::vector<Vec> a(5, Vec(static_cast<std::size_t>(N + 1)));
    for (int i = 0; i < 5; ++i)
        for (int n = 0; n <= N; ++n) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = A[static_cast<std::size_t>(n)][i];
    std::vector<Vec> b{vtheta(a[0])};
    for (int k = 1; k < 5; ++k) {
        Vec t = vtheta(a[static_cast<std::size_t>(k)]);
        for (int n = 0; n <= N; ++n) t[static_cast<std::size_t>(n)] += a[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n)];
        b.push_back(t);
    }
    auto w = [&](int i) { return vsub(vmul(a[0], b[static_cast<std::size_t>(i)]), vmul(a[static_cast<std::size_t>(i)], b[0])); };
    Vec dinv = vinv(w(1));
    Vec H0 = vmul(w(4), dinv), H2 = vmul(w(2), dinv);
    Vec Tz = vsub(vmul(vmul(H2, H2), H2), Vec(H2.size()));
    for (auto& c : Tz) c /= Rational(6);
    Tz = vsub(Tz, H0);
    Vec q = vexp(H2);
    q.insert(q.begin(), Rational(0));
    q.pop_back();
    return vcompose(Tz, vrevert(q));
}

MirrorData case_mirror(const std::string& id, int order) {
    return build_mirror(hypergeometric_operator(find_case(id)), order);
}

}  // namespace

TEST(Mirror, BSeries) {
    FrobeniusBasis F = frobenius_solve(hypergeometric_operator(find_case("t3")), 8);
    auto b = b_series(F);
    ASSERT_EQ(b.size(), 5u);
    EXPECT_TRUE(b[0][0].is_zero());
    EXPECT_EQ(b[1][0], Rational(1));
    EXPECT_EQ(b[0][1], Rational(32));
    const RationalSeries den = F.a[0] * b[1] - F.a[1] * b[0];
    EXPECT_EQ(den[0], Rational(1));
}

TEST(Mirror, HFunctionsIdentity) {
    for (const auto& c : builtin_cases()) {
        HFunctions H = h_functions(frobenius_solve(hypergeometric_operator(c), 40));
        EXPECT_TRUE(H.H2[0].is_zero()) << c.id;
        EXPECT_EQ(H.H1, H.H2 * H.H2 * Rational(1, 2)) << c.id;
    }
}

TEST(Mirror, StructuralIdentitiesAllRows) {
    for (const auto& c : builtin_cases()) {
        MirrorData M = case_mirror(c.id, 40);
        EXPECT_TRUE(M.T_q[0].is_zero()) << c.id;
        EXPECT_EQ(M.K_q[0], Rational(1)) << c.id;
        RationalSeries sum = theta(theta(theta(M.T_q))) + M.K_q;
        EXPECT_EQ(sum, RationalSeries::constant(Rational(1), 40)) << c.id;
        EXPECT_EQ(M.q_of_z[1], Rational(1));
        for (int n = 0; n <= 25; ++n) EXPECT_TRUE(M.q_of_z[n].is_integer()) << c.id << " n=" << n;
        EXPECT_EQ(compose(M.q_of_z, M.z_of_q), RationalSeries::variable(40)) << c.id;
    }
}

TEST(Mirror, PotentialMatchesNaivePipeline) {
    const int N = 6;
    Vec expect = case3_T(N);
    RationalSeries T = potential_T(frobenius_solve(hypergeometric_operator(find_case("t3")), N));
    for (int n = 0; n <= N; ++n) EXPECT_EQ(T[n], expect[static_cast<std::size_t>(n)]) << n;
}

TEST(Mirror, PotentialVanishesForBtheta) {
    MirrorData M = build_mirror(test::operator_file("Btheta").op, 30);
    EXPECT_EQ(M.T_q, RationalSeries(30));
    EXPECT_EQ(M.K_q, RationalSeries::constant(Rational(1), 30));
}

TEST(Mirror, InstantonNumbersConstructed) {
    auto zeros = instanton_numbers(RationalSeries::constant(Rational(1), 10), 10);
    for (const auto& n : zeros) EXPECT_TRUE(n.is_zero());
    // 1 + 8 q/(1-q)
    RationalSeries K(10);
    K[0] = 1;
    for (int d = 1; d <= 10; ++d) K[d] = 8;
    auto n = instanton_numbers(K, 10);
    EXPECT_EQ(n[0], Rational(8));
    for (std::size_t d = 1; d < n.size(); ++d) EXPECT_TRUE(n[d].is_zero()) << d + 1;
    EXPECT_THROW(instanton_numbers(K, 11), PreconditionError);
}

TEST(Mirror, InstantonDenominatorCase3) {
    MirrorData M = case_mirror("t3", 12);
    auto n = instanton_numbers(M.K_q, 8);
    auto N0 = instanton_denominator(n, Integer(1000000));
    ASSERT_TRUE(N0);
    for (const auto& x : n) EXPECT_TRUE((x * Rational(*N0)).is_integer());
    EXPECT_GE(*N0, 1);
}

TEST(Mirror, SingularPointConstructed) {
    MirrorData M;
    M.order = 40;
    M.z_of_q = RationalSeries(40);
    M.z_of_q[1] = 1;
    M.z_of_q[2] = -1;
    SingularPoint p = singular_point(M, 30, 1);
    EXPECT_LT(abs(p.q0 - Real(Rational(1, 2), 30)), pow10(-28, 30));
    EXPECT_LT(abs(p.z0 - Real(Rational(1, 4), 30)), pow10(-28, 30));
    EXPECT_THROW(singular_point(M, 30, -1), NumericError);
}

TEST(Mirror, SingularPointHypergeometric) {
    for (const char* id : {"t3", "t8"}) {
        const CaseSpec& c = find_case(id);
        MirrorLadder ladder(hypergeometric_operator(c), 100, 200);
        SingularPoint p = ladder.singular_point(30, 1);
        Real expect(c.rho.inverse(), 40);
        EXPECT_LT(abs(p.z0 - expect.with_digits(30)) / expect.with_digits(30), pow10(-30, 30)) << id << " " << p.z0;
    }
}

TEST(Mirror, LadderOrders) {
    MirrorLadder ladder(hypergeometric_operator(find_case("t3")), 50, 200);
    EXPECT_EQ(ladder.orders(), (std::vector<int>{50, 100, 200}));
    EXPECT_EQ(ladder.at(50).get(), ladder.at(50).get());
    Real q = Real(Rational(-1, 4096), 60);
    TValues v = ladder.evaluate_T(q, 50);
    EXPECT_LT(v.tail, pow10(-55, 60));
}
