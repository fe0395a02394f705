#include "cyseries/cyode.hpp"

#include <sstream>

namespace cys {

// ---- Polynomial ------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Rational& shift) { return Polynomial({shift, Rational(1)}); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(static_cast<std::size_t>(degree + 1));
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator[](int i) const {
    if (i < 0 || i > degree()) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

EpsPoly Polynomial::at_shifted(const Rational& x, int eps_degree) const {
    const EpsPoly xe = EpsPoly::shifted_power(x, 1, eps_degree);
    EpsPoly r(eps_degree);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r *= xe;
        r[0] += *it;
    }
    return r;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(d));
}

std::string Polynomial::str(char var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        Rational mag = c.abs();
        os << (c.sign() < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        first = false;
        if (i == 0 || mag != Rational(1)) os << mag.str() << (i > 0 ? "*" : "");
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
}

Polynomial operator*(Polynomial a, const Rational& s) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
}

// ---- ThetaOperator ---------------------------------------------------------

ThetaOperator::ThetaOperator(int order, std::map<int, Polynomial> terms)
    : order_(order), terms_(std::move(terms)) {
    if (order_ < 1) throw PreconditionError("operator order must be positive");
    auto q0 = terms_.find(0);
    if (q0 == terms_.end() || q0->second.is_zero()) throw PreconditionError("operator needs a nonzero Q_0");
    if (q0->second.degree() != order_) throw PreconditionError("deg Q_0 must equal the operator order");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first < 0) throw PreconditionError("negative power of z in operator");
        if (it->second.degree() > order_) throw PreconditionError("deg Q_m exceeds the operator order");
        if (it->second.is_zero()) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

const Polynomial& ThetaOperator::q(int m) const {
    static const Polynomial zero;
    auto it = terms_.find(m);
    return it == terms_.end() ? zero : it->second;
}

std::string ThetaOperator::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, p] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (m == 1) os << "z*";
        if (m > 1) os << "z^" << m << "*";
        os << "(" << p.str('t') << ")";
    }
    return os.str();
}

// ---- hypergeometric family -------------------------------------------------

void CaseSpec::validate() const {
    for (const Rational* s : {&s1, &s2}) {
        if (s->sign() <= 0 || *s >= Rational(1)) throw PreconditionError("case " + id + ": s must lie in (0, 1)");
    }
    if (rho.sign() <= 0) throw PreconditionError("case " + id + ": rho must be positive");
}

ThetaOperator hypergeometric_operator(const CaseSpec& c) {
    c.validate();
    Polynomial q1 = Polynomial::linear(Rational(1, 2)) * Polynomial::linear(c.s1) *
                    Polynomial::linear(Rational(1) - c.s1) * Polynomial::linear(c.s2) *
                    Polynomial::linear(Rational(1) - c.s2);
    std::map<int, Polynomial> terms;
    terms[0] = Polynomial::monomial(Rational(1), 5);
    terms[1] = q1 * (-c.rho);
    return ThetaOperator(5, std::move(terms));
}

Rational pochhammer_term(const CaseSpec& c, long n) {
    c.validate();
    if (n < 0) throw PreconditionError("pochhammer_term needs n >= 0");
    const Rational params[5] = {Rational(1, 2), c.s1, Rational(1) - c.s1, c.s2, Rational(1) - c.s2};
    Rational r(1);
    for (long k = 0; k < n; ++k) {
        Rational step = c.rho;
        for (const auto& a : params) step *= a + Rational(k);
        step /= Rational(k + 1).pow(5);
        r *= step;
    }
    return r;
}

bool check_mum(const ThetaOperator& op) {
    const Polynomial& q0 = op.q(0);
    if (q0.degree() != op.order()) return false;
    for (int i = 0; i < op.order(); ++i) {
        if (!q0[i].is_zero()) return false;
    }
    return true;
}

// ---- d/dz form and the coefficient conditions -----------------------------

namespace {

// Stirling numbers of the second kind S(k, j), k <= kmax.
std::vector<std::vector<Rational>> stirling2(int kmax) {
    std::vector<std::vector<Rational>> s(static_cast<std::size_t>(kmax + 1),
                                         std::vector<Rational>(static_cast<std::size_t>(kmax + 1)));
    s[0][0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        for (int j = 1; j <= k; ++j) {
            s[k][j] = s[k - 1][j - 1] + Rational(j) * s[k - 1][j];
        }
    }
    return s;
}

// num/den without reduction; equality by cross-multiplication.
struct RatFunc {
    Polynomial num;
    Polynomial den = Polynomial::constant(Rational(1));

    RatFunc derivative() const {
        return {num.derivative() * den - num * den.derivative(), den * den};
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den == b.den) return {a.num + b.num, a.den};
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den == b.den) return {a.num - b.num, a.den};
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }
    friend RatFunc operator*(const Rational& s, const RatFunc& a) { return {a.num * s, a.den}; }
    bool is_zero() const { return num.is_zero(); }
};

// c_i = P_i / P_r for i < r.
std::vector<RatFunc> normalized(const DzOperator& op, int expected_order) {
    if (op.order() != expected_order) {
        throw PreconditionError("condition check needs an operator of order " + std::to_string(expected_order));
    }
    const Polynomial& lead = op.coeffs.back();
    if (lead.is_zero()) throw PreconditionError("leading coefficient of the operator vanishes");
    std::vector<RatFunc> c;
    for (int i = 0; i < expected_order; ++i) c.push_back({op.coeffs[static_cast<std::size_t>(i)], lead});
    return c;
}

}  // namespace

DzOperator to_dz_form(const ThetaOperator& op) {
    const int r = op.order();
    const auto s = stirling2(r);
    DzOperator out;
    out.coeffs.assign(static_cast<std::size_t>(r + 1), Polynomial());
    for (const auto& [m, q] : op.terms()) {
        for (int k = 0; k <= q.degree(); ++k) {
            if (q[k].is_zero()) continue;
            for (int j = 0; j <= k; ++j) {
                if (s[k][j].is_zero()) continue;
                out.coeffs[static_cast<std::size_t>(j)] += Polynomial::monomial(q[k] * s[k][j], m + j);
            }
        }
    }
    return out;
}

bool check_condition_2(const DzOperator& op) {
    const auto c = normalized(op, 4);
    const RatFunc& c1 = c[1];
    const RatFunc& c2 = c[2];
    const RatFunc& c3 = c[3];
    const RatFunc d3 = c3.derivative();
    RatFunc rhs = Rational(1, 2) * (c2 * c3);
    rhs = rhs - Rational(1, 8) * (c3 * c3 * c3);
    rhs = rhs + c2.derivative();
    rhs = rhs - Rational(3, 4) * (c3 * d3);
    rhs = rhs - Rational(1, 2) * d3.derivative();
    return (rhs - c1).is_zero();
}

bool check_condition_2(const ThetaOperator& op) {
    if (op.order() != 4) throw PreconditionError("condition 2 applies to fourth-order operators");
    return check_condition_2(to_dz_form(op));
}

bool check_condition_25(const DzOperator& op) {
    const auto d = normalized(op, 5);
    const RatFunc& d2 = d[2];
    const RatFunc& d3 = d[3];
    const RatFunc& d4 = d[4];
    const RatFunc d4p = d4.derivative();
    RatFunc rhs = Rational(3, 5) * (d3 * d4);
    rhs = rhs - Rational(4, 25) * (d4 * d4 * d4);
    rhs = rhs + Rational(3, 2) * d3.derivative();
    rhs = rhs - Rational(6, 5) * (d4 * d4p);
    rhs = rhs - d4p.derivative();
    return (rhs - d2).is_zero();
}

bool check_condition_25(const ThetaOperator& op) {
    if (op.order() != 5) throw PreconditionError("condition 2_5 applies to fifth-order operators");
    return check_condition_25(to_dz_form(op));
}

// ---- Frobenius solver -------------------------------------------------------

std::vector<EpsPoly> frobenius_coefficients(const ThetaOperator& op, int n_max) {
    if (!check_mum(op)) throw PreconditionError("Frobenius solve needs a MUM operator (Q_0 = c*theta^r)");
    if (n_max < 0) throw PreconditionError("truncation order must be non-negative");
    const int deg = std::min(op.order() - 1, EpsPoly::kMaxDegree);
    const Rational lead = op.q(0)[op.order()];
    std::vector<EpsPoly> A;
    A.reserve(static_cast<std::size_t>(n_max + 1));
    A.emplace_back(Rational(1), deg);
    for (int n = 1; n <= n_max; ++n) {
        EpsPoly acc(deg);
        for (const auto& [m, q] : op.terms()) {
            if (m == 0 || m > n) continue;
            acc += q.at_shifted(Rational(n - m), deg) * A[static_cast<std::size_t>(n - m)];
        }
        // divide by lead * (n + eps)^r
        EpsPoly denom = EpsPoly::shifted_power(Rational(n), op.order(), deg) * lead;
        A.push_back(-(acc * denom.inverse()));
    }
    return A;
}

FrobeniusBasis frobenius_solve(const ThetaOperator& op, int n_max) {
    const auto A = frobenius_coefficients(op, n_max);
    const int strata = std::min(op.order(), EpsPoly::kMaxDegree + 1);
    FrobeniusBasis basis;
    for (int i = 0; i < strata; ++i) {
        RationalSeries s(n_max);
        for (int n = 0; n <= n_max; ++n) s[n] = A[static_cast<std::size_t>(n)][i];
        basis.a.push_back(std::move(s));
    }
    return basis;
}

bool recurrence_residual_vanishes(const ThetaOperator& op, const std::vector<EpsPoly>& coeffs) {
    if (coeffs.empty()) return true;
    const int deg = coeffs.front().degree();
    for (int n = 0; n < static_cast<int>(coeffs.size()); ++n) {
        EpsPoly acc(deg);
        for (const auto& [m, q] : op.terms()) {
            if (m > n) continue;
            acc += q.at_shifted(Rational(n - m), deg) * coeffs[static_cast<std::size_t>(n - m)];
        }
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace cys
