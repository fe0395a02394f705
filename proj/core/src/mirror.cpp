#include "cyseries/mirror.hpp"

#include <algorithm>

namespace cys {

std::vector<RationalSeries> b_series(const FrobeniusBasis& F) {
    std::vector<RationalSeries> b;
    b.push_back(theta(F.a[0]));
    for (std::size_t k = 1; k < F.a.size(); ++k) b.push_back(F.a[k - 1] + theta(F.a[k]));
    return b;
}

HFunctions h_functions(const FrobeniusBasis& F) {
    if (F.a.size() < 5) throw PreconditionError("wronskian quotients need five Frobenius strata");
    const auto b = b_series(F);
    const auto& a = F.a;
    auto w = [&](int i) { return a[0] * b[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)] * b[0]; };
    const RationalSeries den = w(1);
    if (den[0].is_zero()) throw PreconditionError("a0 b1 - a1 b0 has zero constant term");
    return {w(4) / den, w(3) / den, w(2) / den};
}

namespace {

MirrorMap map_from_h2(const RationalSeries& H2) {
    const int n = H2.order();
    RationalSeries q = RationalSeries::variable(n) * exp_series(H2);
    RationalSeries z = revert(q);
    return {std::move(q), std::move(z)};
}

RationalSeries t_in_z_chart(const HFunctions& H) {
    return H.H2 * H.H2 * H.H2 * Rational(1, 6) - H.H0;
}

}  // namespace

MirrorMap mirror_map(const FrobeniusBasis& F) { return map_from_h2(h_functions(F).H2); }

RationalSeries potential_T(const FrobeniusBasis& F) {
    const HFunctions H = h_functions(F);
    const MirrorMap m = map_from_h2(H.H2);
    return compose(t_in_z_chart(H), m.z_of_q);
}

RationalSeries yukawa(const RationalSeries& T_q) {
    RationalSeries K = -theta(theta(theta(T_q)));
    K[0] += Rational(1);
    return K;
}

std::vector<Rational> instanton_numbers(const RationalSeries& K_q, int d_max) {
    if (d_max > K_q.order()) throw PreconditionError("d_max exceeds the order of K");
    std::vector<Rational> n(static_cast<std::size_t>(d_max + 1));
    for (int m = 1; m <= d_max; ++m) {
        Rational c = K_q[m];
        for (int d = 1; d < m; ++d) {
            if (m % d == 0) c -= n[static_cast<std::size_t>(d)] * Rational(static_cast<long>(d) * d * d);
        }
        n[static_cast<std::size_t>(m)] = c / Rational(static_cast<long>(m) * m * m);
    }
    n.erase(n.begin());
    return n;
}

std::optional<Integer> instanton_denominator(const std::vector<Rational>& n, const Integer& limit) {
    Integer l = 1;
    for (const auto& x : n) {
        l = lcm(l, x.den());
        if (l > limit) return std::nullopt;
    }
    return l;
}

MirrorData build_mirror(const FrobeniusBasis& F) {
    MirrorData M;
    M.order = F.order();
    M.H = h_functions(F);
    MirrorMap m = map_from_h2(M.H.H2);
    M.q_of_z = std::move(m.q_of_z);
    M.z_of_q = std::move(m.z_of_q);
    M.T_z = t_in_z_chart(M.H);
    M.T_q = compose(M.T_z, M.z_of_q);
    M.K_q = yukawa(M.T_q);
    return M;
}

MirrorData build_mirror(const ThetaOperator& op, int order) { return build_mirror(frobenius_solve(op, order)); }

Real radius_estimate(const RationalSeries& f, int digits) {
    std::vector<std::pair<int, Real>> logs;
    for (int i = f.order(); i >= 1 && logs.size() < 10; --i) {
        if (!f[i].is_zero()) logs.emplace_back(i, log(abs(Real(f[i], digits))));
    }
    if (logs.size() < 2) return pow10(100, digits);
    const auto& [i_hi, l_hi] = logs.front();
    const auto& [i_lo, l_lo] = logs.back();
    // log|c_i| ~ -i log r
    Real slope = (l_hi - l_lo) / static_cast<long>(i_hi - i_lo);
    return exp(-slope);
}

TValues evaluate_T(const MirrorData& M, const Real& q) {
    const RationalSeries t1 = theta(M.T_q);
    const RationalSeries t2 = theta(t1);
    NumericValue a = eval_with_tail(M.T_q, q);
    NumericValue b = eval_with_tail(t1, q);
    NumericValue c = eval_with_tail(t2, q);
    Real tail = a.tail_estimate;
    if (b.tail_estimate > tail) tail = b.tail_estimate;
    if (c.tail_estimate > tail) tail = c.tail_estimate;
    return {a.value, b.value, c.value, tail};
}

namespace {

struct SingularResult {
    SingularPoint point;
    Real tail;
};

SingularResult locate_singular(const MirrorData& M, int digits, int u) {
    if (u != 1 && u != -1) throw PreconditionError("sign u must be +1 or -1");
    const int wd = digits + 10;
    const RationalSeries dz = derivative(M.z_of_q);
    const RationalSeries d2z = derivative(dz);
    const Real radius = radius_estimate(M.z_of_q, wd);
    const Real limit = radius * Rational(98, 100);

    auto zp = [&](const Real& q) { return eval_with_tail(dz, q).value; };

    constexpr int kSamples = 64;
    std::optional<std::pair<Real, Real>> bracket;
    Real prev_q(0L, wd);
    Real prev_v = zp(prev_q);
    for (int i = 1; i <= kSamples; ++i) {
        Real q = limit * Rational(static_cast<long>(u) * i, kSamples);
        Real v;
        try {
            v = zp(q);
        } catch (const NumericError&) {
            break;
        }
        if (v.sign() != prev_v.sign()) {
            bracket.emplace(prev_q, q);
            break;
        }
        prev_q = q;
        prev_v = v;
    }
    if (!bracket) throw NumericError("no sign change of dz/dq found inside the radius of z(q)");

    // Newton on z'(q) with bisection safeguard.
    Real lo = bracket->first, hi = bracket->second;
    const int s_lo = zp(lo).sign();
    Real q = (lo + hi) / 2L;
    const Real eps = pow10(-(wd - 2), wd);
    for (int iter = 0; iter < 400; ++iter) {
        const Real v = zp(q);
        if (v.is_zero()) break;
        if (v.sign() == s_lo) {
            lo = q;
        } else {
            hi = q;
        }
        const Real d = eval_with_tail(d2z, q).value;
        Real next = q - v / d;
        const bool inside = (next - lo).sign() * (next - hi).sign() <= 0;
        if (!inside) next = (lo + hi) / 2L;
        const Real step = abs(next - q);
        q = next;
        if (step < eps * abs(q)) break;
    }
    NumericValue zv = eval_with_tail(M.z_of_q, q);
    NumericValue dv = eval_with_tail(dz, q);
    Real tail = zv.tail_estimate > dv.tail_estimate ? zv.tail_estimate : dv.tail_estimate;
    SingularPoint p{q.with_digits(digits), log(abs(q)).with_digits(digits), zv.value.with_digits(digits)};
    return {p, tail};
}

}  // namespace

SingularPoint singular_point(const MirrorData& M, int digits, int u) {
    SingularResult r = locate_singular(M, digits, u);
    if (r.tail > abs(r.point.z0) * pow10(-10, digits)) {
        throw NumericError("singular point: tail estimate too large, raise the truncation order");
    }
    return r.point;
}

MirrorLadder::MirrorLadder(ThetaOperator op, int base_order, int max_order)
    : op_(std::move(op)), base_(base_order), max_(std::max(base_order, max_order)) {
    if (base_ < 1) throw PreconditionError("series order must be positive");
    if (!check_mum(op_)) throw PreconditionError("mirror data needs a MUM operator");
    if (op_.order() != 5) throw PreconditionError("mirror data needs a fifth-order operator");
}

std::vector<int> MirrorLadder::orders() const {
    std::vector<int> out;
    for (int n = base_;; n *= 2) {
        out.push_back(std::min(n, max_));
        if (n >= max_) break;
    }
    return out;
}

std::shared_ptr<const MirrorData> MirrorLadder::at(int order) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(order);
    if (it != cache_.end()) return it->second;
    auto data = std::make_shared<const MirrorData>(build_mirror(op_, order));
    cache_.emplace(order, data);
    return data;
}

TValues MirrorLadder::evaluate_T(const Real& q, int digits) const {
    const Real goal = pow10(-(digits + 5), q.digits());
    std::optional<TValues> last;
    std::optional<NumericError> failure;
    for (int n : orders()) {
        try {
            TValues v = cys::evaluate_T(*at(n), q);
            if (v.tail < goal) return v;
            last = v;
        } catch (const NumericError& e) {
            failure = e;
        }
    }
    if (last) return *last;
    throw *failure;
}

SingularPoint MirrorLadder::singular_point(int digits, int u) const {
    const Real goal = pow10(-(digits + 5), digits);
    std::optional<SingularResult> last;
    std::optional<NumericError> failure;
    for (int n : orders()) {
        try {
            SingularResult r = locate_singular(*at(n), digits, u);
            if (r.tail < goal) return r.point;
            last = r;
        } catch (const NumericError& e) {
            failure = e;
        }
    }
    if (last) {
        if (last->tail > abs(last->point.z0) * pow10(-10, digits)) {
            throw NumericError("singular point: tail estimate too large at the largest order");
        }
        return last->point;
    }
    throw *failure;
}

}  // namespace cys
