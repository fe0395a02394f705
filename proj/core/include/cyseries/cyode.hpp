#pragma once

// Differential operators sum_m z^m Q_m(theta), the hypergeometric family,
// Calabi-Yau condition checks and the Frobenius solver.

#include <map>
#include <string>
#include <vector>

#include "cyseries/numkernel.hpp"
#include "cyseries/series.hpp"

namespace cys {

/// Dense polynomial with rational coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c);
    /// x + shift
    static Polynomial linear(const Rational& shift);
    static Polynomial monomial(const Rational& c, int degree);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Rational operator[](int i) const;
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    Rational operator()(const Rational& x) const;
    /// Value at x + eps as an eps-polynomial of the given truncation degree.
    EpsPoly at_shifted(const Rational& x, int eps_degree) const;
    Polynomial derivative() const;
    std::string str(char var = 'x') const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

/// sum_m z^m Q_m(theta) with theta = z d/dz.
class ThetaOperator {
public:
    ThetaOperator() = default;
    /// Validates: 1 <= order, Q_0 present with degree == order, every deg Q_m <= order.
    ThetaOperator(int order, std::map<int, Polynomial> terms);

    int order() const noexcept { return order_; }
    const std::map<int, Polynomial>& terms() const noexcept { return terms_; }
    const Polynomial& q(int m) const;
    int max_shift() const { return terms_.rbegin()->first; }
    std::string str() const;

    friend bool operator==(const ThetaOperator&, const ThetaOperator&) = default;

private:
    int order_ = 0;
    std::map<int, Polynomial> terms_;
};

/// A row of the hypergeometric family with parameters s1, s2 and scale rho.
struct CaseSpec {
    std::string id;
    Rational s1;
    Rational s2;
    Rational rho;
    std::string binomial_form;  // sequence expression in n

    void validate() const;
};

/// theta^5 - rho z (theta+1/2)(theta+s1)(theta+1-s1)(theta+s2)(theta+1-s2).
ThetaOperator hypergeometric_operator(const CaseSpec& c);

/// rho^n (1/2)_n (s1)_n (1-s1)_n (s2)_n (1-s2)_n / n!^5.
Rational pochhammer_term(const CaseSpec& c, long n);

/// Q_0 is a nonzero multiple of theta^order.
bool check_mum(const ThetaOperator& op);

/// sum_j P_j(z) (d/dz)^j, j = 0..order.
struct DzOperator {
    std::vector<Polynomial> coeffs;
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Rewrites theta^k = sum_j S(k, j) z^j D^j.
DzOperator to_dz_form(const ThetaOperator& op);

/// Condition on y'''' + c3 y''' + c2 y'' + c1 y' + c0 y = 0, checked as an
/// exact identity of rational functions.
bool check_condition_2(const DzOperator& op);
bool check_condition_2(const ThetaOperator& op);

/// The corresponding condition on the coefficients d_i of a fifth-order equation.
bool check_condition_25(const DzOperator& op);
bool check_condition_25(const ThetaOperator& op);

/// Pure-series strata a_0 .. a_{r-1} of the log-stratified solutions.
struct FrobeniusBasis {
    std::vector<RationalSeries> a;
    int order() const { return a.empty() ? -1 : a.front().order(); }
};

/// Deformed coefficients A_n(eps), n = 0..N, from the recurrence
/// Q_0(n+eps) A_n = -sum_{m>=1} Q_m(n-m+eps) A_{n-m}, A_0 = 1.
std::vector<EpsPoly> frobenius_coefficients(const ThetaOperator& op, int n_max);

/// a_i[n] = [eps^i] A_n(eps). Throws PreconditionError for non-MUM operators.
FrobeniusBasis frobenius_solve(const ThetaOperator& op, int n_max);

/// True when sum_m Q_m(n-m+eps) A_{n-m}(eps) vanishes identically (to the
/// eps truncation degree) for every n covered by the coefficients.
bool recurrence_residual_vanishes(const ThetaOperator& op, const std::vector<EpsPoly>& coeffs);

}  // namespace cys
