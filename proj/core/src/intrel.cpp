#include "cyseries/intrel.hpp"

#include <algorithm>

namespace cys {

namespace {

using Matrix = std::vector<std::vector<Real>>;
using IMatrix = std::vector<std::vector<Integer>>;

Real rint(const Real& x, int digits) { return Real(x.round(), digits); }

}  // namespace

Real relation_residual(const std::vector<Real>& v, const std::vector<Integer>& m) {
    int digits = v.front().digits();
    for (const auto& x : v) digits = std::min(digits, x.digits());
    Real s(0L, digits);
    for (std::size_t i = 0; i < v.size(); ++i) s += Real(m[i], digits) * v[i];
    return abs(s);
}

std::optional<std::vector<Integer>> pslq(const std::vector<Real>& v, const Integer& max_coeff, int digits,
                                         const PslqOptions& opt) {
    const std::size_t n = v.size();
    if (n < 2) throw PreconditionError("pslq needs at least two values");
    int wd = v.front().digits();
    for (const auto& x : v) wd = std::min(wd, x.digits());
    if (digits > wd) throw PreconditionError("pslq: requested digits exceed the precision of the inputs");
    if (digits <= opt.slack + 2) throw PreconditionError("pslq: too few digits for the detection threshold");

    Real vmax(0L, wd);
    for (const auto& x : v) vmax = std::max(vmax, abs(x), [](const Real& a, const Real& b) { return a < b; });
    if (vmax.is_zero()) throw PreconditionError("pslq: all values are zero");
    const Real tol = pow10(-(digits - opt.slack), wd);

    // A value that is itself (numerically) zero is a trivial relation.
    for (std::size_t i = 0; i < n; ++i) {
        if (abs(v[i]) < tol * vmax) {
            std::vector<Integer> e(n, Integer(0));
            e[i] = 1;
            return e;
        }
    }

    const Real gamma = sqrt(Real(Rational(4, 3), wd));
    const Real zero(0L, wd);
    std::vector<Real> x(v.begin(), v.end());
    for (auto& xi : x) xi = xi.with_digits(wd) / vmax;

    IMatrix A(n, std::vector<Integer>(n, Integer(0)));
    IMatrix B(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) A[i][i] = B[i][i] = 1;

    std::vector<Real> s(n, zero);
    for (std::size_t k = 0; k < n; ++k) {
        Real acc = zero;
        for (std::size_t j = k; j < n; ++j) acc += x[j] * x[j];
        s[k] = sqrt(acc);
    }
    const Real t0 = s[0];
    std::vector<Real> y(n, zero);
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = x[k] / t0;
        s[k] = s[k] / t0;
    }

    Matrix H(n, std::vector<Real>(n - 1, zero));
    for (std::size_t i = 0; i < n; ++i) {
        if (i < n - 1 && !s[i].is_zero()) H[i][i] = s[i + 1] / s[i];
        for (std::size_t j = 0; j < i && j < n - 1; ++j) {
            const Real sjj = s[j] * s[j + 1];
            if (!sjj.is_zero()) H[i][j] = -(y[i] * y[j]) / sjj;
        }
    }

    auto reduce_row = [&](std::size_t i, std::size_t j) {
        if (H[j][j].is_zero()) return;
        const Real t = rint(H[i][j] / H[j][j], wd);
        if (t.is_zero()) return;
        const Integer ti = t.round();
        y[j] += t * y[i];
        for (std::size_t k = 0; k <= j; ++k) H[i][k] -= t * H[j][k];
        for (std::size_t k = 0; k < n; ++k) {
            A[i][k] -= ti * A[j][k];
            B[k][j] += ti * B[k][i];
        }
    };

    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t jj = i; jj-- > 0;) {
            if (jj < n - 1) reduce_row(i, jj);
        }
    }

    const long max_steps = static_cast<long>(opt.steps_per_digit) * digits;
    for (long step = 0; step < max_steps; ++step) {
        // pick m maximizing gamma^(i+1) |H_ii|
        std::size_t m = 0;
        Real best(-1L, wd);
        Real g = gamma;
        for (std::size_t i = 0; i < n - 1; ++i) {
            const Real val = g * abs(H[i][i]);
            if (val > best) {
                best = val;
                m = i;
            }
            g *= gamma;
        }
        std::swap(y[m], y[m + 1]);
        std::swap(H[m], H[m + 1]);
        std::swap(A[m], A[m + 1]);
        for (std::size_t k = 0; k < n; ++k) std::swap(B[k][m], B[k][m + 1]);

        if (m + 2 < n) {
            const Real r = sqrt(H[m][m] * H[m][m] + H[m][m + 1] * H[m][m + 1]);
            if (r.is_zero()) break;
            const Real c1 = H[m][m] / r;
            const Real c2 = H[m][m + 1] / r;
            for (std::size_t i = m; i < n; ++i) {
                const Real h3 = H[i][m];
                const Real h4 = H[i][m + 1];
                H[i][m] = c1 * h3 + c2 * h4;
                H[i][m + 1] = c1 * h4 - c2 * h3;
            }
        }
        for (std::size_t i = m + 1; i < n; ++i) {
            const std::size_t top = std::min(i - 1, m + 1);
            for (std::size_t jj = top + 1; jj-- > 0;) reduce_row(i, jj);
        }

        for (std::size_t i = 0; i < n; ++i) {
            if (abs(y[i]) >= tol) continue;
            std::vector<Integer> rel(n);
            Integer big = 0;
            for (std::size_t k = 0; k < n; ++k) {
                rel[k] = B[k][i];
                big = std::max(big, Integer(::abs(rel[k])));
            }
            if (big == 0 || big > max_coeff) continue;
            if (relation_residual(v, rel) >= tol * vmax * Real(big, wd) * static_cast<long>(n)) continue;
            for (const auto& c : rel) {
                if (c != 0) {
                    if (c < 0) {
                        for (auto& r : rel) r = -r;
                    }
                    break;
                }
            }
            return rel;
        }

        // Any relation has norm >= 1/max|H|; entries <= max_coeff allow norm up to sqrt(n)*max_coeff.
        Real hmax = zero;
        for (const auto& row : H) {
            for (const auto& h : row) {
                const Real a = abs(h);
                if (a > hmax) hmax = a;
            }
        }
        if (hmax.is_zero()) break;
        if (Real(1L, wd) / hmax > Real(max_coeff, wd) * sqrt(Real(static_cast<long>(n), wd))) break;
    }
    return std::nullopt;
}

std::optional<Rational> rationalize(const Real& x, const Integer& max_denom, const std::optional<Real>& tol) {
    const int wd = x.digits();
    const Real eps = tol ? *tol : pow10(-(wd - 10), wd);
    // Convergents h/k of the continued fraction of x.
    Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
    Real rest = x;
    for (int iter = 0; iter < 4 * wd + 20; ++iter) {
        Real fl(0L, wd);
        mpfr_floor(fl.get(), rest.get());
        const Integer a = fl.round();
        Integer h_next = a * h_prev + h;
        Integer k_next = a * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        if (k_prev > max_denom) return std::nullopt;
        const Rational cand(h_prev, k_prev);
        if (abs(x - Real(cand, wd)) < eps) return cand;
        const Real frac = rest - fl;
        if (frac.is_zero()) return std::nullopt;
        rest = Real(1L, wd) / frac;
    }
    return std::nullopt;
}

std::optional<QuadExt> identify_quadratic(const Real& x, const std::vector<long>& discs, const Integer& height,
                                          std::optional<int> digits) {
    const int wd = x.digits();
    const int d = digits.value_or(wd);
    Integer den_cap = height;
    if (auto r = rationalize(x, den_cap, pow10(-(d - 10), wd))) {
        if (::abs(r->num()) <= height * height) return QuadExt(*r);
    }
    for (long disc : discs) {
        if (disc <= 1) continue;
        const Real root = sqrt(Real(disc, wd));
        std::vector<Real> v{Real(1L, wd), root, x};
        auto rel = pslq(v, height, d);
        if (!rel || (*rel)[2] == 0) continue;
        const Rational r2((*rel)[2]);
        QuadExt q(-Rational((*rel)[0]) / r2, -Rational((*rel)[1]) / r2, Integer(disc));
        if (abs(quad_value(q, wd) - x) < pow10(-(d - 15), wd) * (abs(x) + Real(1L, wd))) return q;
    }
    return std::nullopt;
}

}  // namespace cys
