#include "cyseries/hunter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <regex>
#include <thread>

#include "cyseries/intrel.hpp"

namespace cys {

// ---- invariants -------------------------------------------------------------

namespace {

Rational recognize_invariant(const Real& x, const char* name) {
    auto r = rationalize(x, Integer(1000000));
    if (!r) throw RecognitionError(std::string("invariant ") + name + " is not a small rational: " + x.str(30));
    return *r;
}

}  // namespace

Invariants invariants_hypergeometric(const CaseSpec& c, int digits) {
    c.validate();
    const int wd = digits + 10;
    auto cot2 = [&](const Rational& s) {
        Real v = trig_at_rational(TrigKind::cot, s, wd);
        return v * v;
    };
    auto sin2 = [&](const Rational& s) {
        Real v = trig_at_rational(TrigKind::sin, s, wd);
        return v * v;
    };
    const Real e = Real(Rational(5, 3), wd) + cot2(c.s1) + cot2(c.s2);
    const Real f = Real(1L, wd) / (sin2(c.s1) * sin2(c.s2));
    const Real z3 = const_zeta3(wd);
    Real hz = hurwitz_zeta3(Rational(1, 2), wd);
    for (const Rational& s : {c.s1, Rational(1) - c.s1, c.s2, Rational(1) - c.s2}) hz += hurwitz_zeta3(s, wd);
    const Real h = (hz - z3 * 5L) / (z3 * 3L);
    return {recognize_invariant(e.with_digits(digits), "e"), recognize_invariant(h.with_digits(digits), "h"),
            recognize_invariant(f.with_digits(digits), "f")};
}

SingularInvariants invariants_from_singularity(const MirrorLadder& ladder, int digits, int u) {
    const SingularPoint sp = ladder.singular_point(digits, u);
    const Real q0 = sp.q0.with_digits(digits + 10);
    const TValues tv = ladder.evaluate_T(q0, digits);
    const int wd = digits;
    const Real t0 = sp.t0.with_digits(wd);
    const Real pi = const_pi(wd);
    const Real pi2 = pi * pi;
    std::vector<Real> v{t0 * t0 * t0 / 6L - tv.T.with_digits(wd), pi2 * t0 / 2L, const_zeta3(wd)};
    auto rel = pslq(v, Integer(100000000), digits - 5);
    if (!rel || (*rel)[0] == 0) throw RecognitionError("no relation for e, h at the singular point");
    const Rational m0((*rel)[0]);
    Invariants inv;
    inv.e = -Rational((*rel)[1]) / m0;
    inv.h = -Rational((*rel)[2]) / m0;
    const Real x = t0 * t0 / 2L - tv.thetaT.with_digits(wd) - pi2 * inv.e / 2L;
    inv.f = recognize_invariant(x * x / (pi2 * pi2), "f");
    return {inv, sp};
}

Invariants resolve_invariants(const CaseEntry& entry, const MirrorLadder& ladder, int digits) {
    if (entry.invariants) return *entry.invariants;
    if (entry.hyper) return invariants_hypergeometric(*entry.hyper, std::max(digits, 40));
    return invariants_from_singularity(ladder, std::max(digits, 40), 1).inv;
}

// ---- the search equation ----------------------------------------------------

namespace {

/// Real roots of t^3 + p t + q = 0.
std::vector<double> depressed_cubic_roots(double p, double q) {
    std::vector<double> r;
    const double disc = -(4 * p * p * p + 27 * q * q);
    if (disc > 0) {
        const double m = 2 * std::sqrt(-p / 3);
        const double arg = std::clamp(3 * q / (2 * p) * std::sqrt(-3 / p), -1.0, 1.0);
        const double th = std::acos(arg) / 3;
        for (int k = 0; k < 3; ++k) r.push_back(m * std::cos(th - 2 * std::numbers::pi * k / 3));
    } else {
        const double s = std::sqrt(std::max(0.0, q * q / 4 + p * p * p / 27));
        r.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s));
    }
    std::sort(r.begin(), r.end());
    return r;
}

struct Eq6Function {
    const Invariants& inv;
    const Rational& k;
    int u;
    const MirrorLadder& ladder;

    struct Value {
        Real F;
        Real dF;
        Real q;
        TValues T;
    };

    Value operator()(const Real& t, int digits) const {
        const int wd = t.digits();
        const Real pi = const_pi(wd);
        const Real alpha = pi * pi * (k + inv.e) / 2L;
        const Real beta = const_zeta3(wd) * inv.h;
        Real q = exp(t);
        if (u < 0) q = -q;
        TValues T = ladder.evaluate_T(q, digits);
        Real F = t * t * t / 6L - alpha * t - beta - T.T;
        Real dF = t * t / 2L - alpha - T.thetaT;
        return {F, dF, q, T};
    }
};

std::optional<Eq6Root> newton(const Eq6Function& fn, double seed, int digits) {
    // Coarse stage at low precision, then refinement at full precision.
    const int stages[2] = {30, digits + 10};
    Real t(seed, stages[0]);
    for (int s = 0; s < 2; ++s) {
        const int wd = stages[s];
        t = t.with_digits(wd);
        const Real eps = pow10(-(wd - 8), wd);
        const int cap = s == 0 ? 100 : 30;
        bool done = false;
        for (int it = 0; it < cap && !done; ++it) {
            auto v = fn(t, wd - 5);
            if (v.dF.is_zero()) return std::nullopt;
            Real step = v.F / v.dF;
            if (abs(step) > Real(2L, wd)) step = Real(step.sign() * 2L, wd);
            t -= step;
            if (t > Real(0L, wd)) return std::nullopt;
            if (abs(step) < eps * (abs(t) + Real(1L, wd))) done = true;
        }
        if (!done) return std::nullopt;
    }
    auto v = fn(t, digits + 5);
    const Real scale = abs(t * t * t) + Real(1L, t.digits());
    if (abs(v.F) > scale * pow10(-(digits - 10), t.digits())) return std::nullopt;
    if (v.T.tail > pow10(-(digits - 10), t.digits()) * (abs(v.T.T) + Real(1L, t.digits()))) return std::nullopt;
    return Eq6Root{t.with_digits(digits + 5), v.q.with_digits(digits + 5), v.T};
}

}  // namespace

std::vector<Eq6Root> solve_eq6_all(const Invariants& inv, const Rational& k, int u, const MirrorLadder& ladder,
                                   int digits) {
    if (u != 1 && u != -1) throw PreconditionError("sign u must be +1 or -1");
    if (digits < 30) throw PreconditionError("the search equation needs at least 30 digits");
    const Eq6Function fn{inv, k, u, ladder};
    const double alpha = std::numbers::pi * std::numbers::pi / 2 * (k + inv.e).to_double();
    const double beta = 1.2020569031595942 * inv.h.to_double();

    std::vector<double> seeds;
    for (double r : depressed_cubic_roots(-6 * alpha, -6 * beta)) {
        if (r < 0) seeds.push_back(r);
    }
    // Sign-change scan of F at low precision.
    std::optional<double> prev_t;
    int prev_sign = 0;
    for (double t = -40; t <= -1; t += 0.5) {
        int s = 0;
        try {
            s = fn(Real(t, 30), 25).F.sign();
        } catch (const NumericError&) {
            prev_t.reset();
            continue;
        }
        if (prev_t && s != prev_sign && s != 0) seeds.push_back((t + *prev_t) / 2);
        prev_t = t;
        prev_sign = s;
    }

    std::vector<Eq6Root> roots;
    for (double seed : seeds) {
        std::optional<Eq6Root> r;
        try {
            r = newton(fn, seed, digits);
        } catch (const NumericError&) {
            continue;
        }
        if (!r) continue;
        const bool dup = std::any_of(roots.begin(), roots.end(), [&](const Eq6Root& x) {
            return abs(x.t - r->t) < pow10(-(digits / 2), digits);
        });
        if (!dup) roots.push_back(*r);
    }
    std::sort(roots.begin(), roots.end(), [](const Eq6Root& a, const Eq6Root& b) { return a.t < b.t; });
    return roots;
}

std::optional<Eq6Root> solve_eq6(const Invariants& inv, const Rational& k, int u, const MirrorLadder& ladder,
                                 int digits) {
    auto roots = solve_eq6_all(inv, k, u, ladder, digits);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

Real compute_j(const Invariants& inv, const Rational& k, const Eq6Root& root) {
    const Real& t = root.t;
    const int wd = t.digits();
    const Real pi = const_pi(wd);
    const Real pi2 = pi * pi;
    const Real x = t * t / 2L - root.T.thetaT.with_digits(wd) - pi2 * (k + inv.e) / 2L;
    const Rational rest = k * k / 4 + inv.e * k + inv.f;
    return (x * x / (pi2 * pi2) - rest) * 12L;
}

std::optional<Rational> recognize_j(const Real& j, long max_den, double tol) {
    const double scale = std::max(1.0, std::fabs(j.to_double()));
    return rationalize(j, Integer(max_den), Real(tol * scale, j.digits()));
}

Rational tau_squared(const Invariants& inv, const Rational& k, const Rational& j) {
    return j / 12 + k * k / 4 + inv.e * k + inv.f;
}

Real compute_tau_hypergeometric(const Real& c, const Rational& rho, const Real& z) {
    const Real w = Real(1L, z.digits()) - z * rho;
    if (w.sign() <= 0) throw PreconditionError("1 - rho z must be positive");
    return c / sqrt(w);
}

Real coefficient_from_tau_hypergeometric(const Real& tau, const Rational& rho, const Real& z) {
    const Real w = Real(1L, z.digits()) - z * rho;
    if (w.sign() <= 0) throw PreconditionError("1 - rho z must be positive");
    return tau * sqrt(w);
}

namespace {

Real e3_integral(const std::vector<Rational>& e3, const Real& z) {
    // integral of sum_k e_k z^(k-1) / 2 = sum_k e_k z^k / (2k)
    Real s(0L, z.digits()), zk(1L, z.digits());
    for (std::size_t i = 0; i < e3.size(); ++i) {
        zk *= z;
        s += zk * (e3[i] / Rational(static_cast<long>(2 * (i + 1))));
    }
    return s;
}

}  // namespace

Real compute_tau_general(const std::vector<Rational>& e3, const Real& z, const Real& c) {
    return c * exp(e3_integral(e3, z));
}

Real coefficient_from_tau_general(const std::vector<Rational>& e3, const Real& z, const Real& tau) {
    return tau / exp(e3_integral(e3, z));
}

double operator_radius(const ThetaOperator& op) {
    const int r = op.order();
    std::vector<std::complex<double>> c;  // c[m] = theta^r coefficient of Q_m
    for (int m = 0; m <= op.max_shift(); ++m) {
        const Polynomial& q = op.q(m);
        c.emplace_back(q.degree() >= r ? q[r].to_double() : 0.0, 0.0);
    }
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) return std::numeric_limits<double>::infinity();
    for (auto& x : c) x /= c.back();
    // Durand-Kerner on the monic polynomial.
    std::vector<std::complex<double>> z(static_cast<std::size_t>(deg));
    const std::complex<double> seed(0.4, 0.9);
    for (int i = 0; i < deg; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, i) * 1e-3;
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int i = deg; i >= 0; --i) v = v * x + c[static_cast<std::size_t>(i)];
        return v;
    };
    for (int it = 0; it < 2000; ++it) {
        double change = 0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < deg; ++j) {
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            }
            const std::complex<double> d = eval(z[static_cast<std::size_t>(i)]) / den;
            z[static_cast<std::size_t>(i)] -= d;
            change = std::max(change, std::abs(d));
        }
        if (change < 1e-18) break;
    }
    double best = std::numeric_limits<double>::infinity();
    for (auto x : z) best = std::min(best, std::abs(x));
    return best;
}

// ---- coefficient recovery ---------------------------------------------------

std::vector<Real> moment_sums(const SeqExpr& seq, const Real& z, int digits, int max_terms) {
    const int wd = z.digits();
    std::vector<Real> S(3, Real(0L, wd));
    Real zn(1L, wd);
    const Real eps = pow10(-(digits + 5), wd);
    int small = 0;
    for (long n = 0; n < max_terms; ++n) {
        Real t = Real(seq.eval(n), wd) * zn;
        S[0] += t;
        S[1] += t * n;
        S[2] += t * (n * n);
        const Real size = abs(t) * (n * n + 1);
        if (n > 4 && size < eps * (abs(S[0]) + abs(S[2]))) {
            if (++small >= 5) return S;
        } else {
            small = 0;
        }
        zn *= z;
    }
    throw NumericError("moment sums did not converge within the term cap");
}

namespace {

Integer height_for(int digits, int terms) {
    long e = std::max(2L, static_cast<long>((digits - 15) / terms));
    Integer h;
    mpz_ui_pow_ui(h.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return h;
}

const std::vector<long>& default_discs() {
    static const std::vector<long> d{1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30};
    return d;
}

}  // namespace

std::optional<Coefficients> recover_abc(const SeqExpr& seq, const QuadExt& z, int digits,
                                        const std::vector<long>& discs) {
    const int wd = digits + 10;
    const std::vector<Real> S = moment_sums(seq, quad_value(z, wd), digits + 5);
    const Real pi = const_pi(wd);
    const Real pi2 = pi * pi;

    if (z.is_rational()) {
        for (long d : discs.empty() ? default_discs() : discs) {
            const Real sd = sqrt(Real(d, wd));
            std::vector<Real> v{S[0], S[1], S[2], Real(1L, wd) / (sd * pi2)};
            auto rel = pslq(v, height_for(digits, 4), digits);
            if (!rel || (*rel)[3] == 0) continue;
            const Rational m3((*rel)[3]);
            auto part = [&](int i) {
                const Rational x = -Rational((*rel)[static_cast<std::size_t>(i)]) / m3;
                return d == 1 ? QuadExt(x) : QuadExt(Rational(0), x, Integer(d));
            };
            return Coefficients{part(0), part(1), part(2)};
        }
        return std::nullopt;
    }

    const Integer d0 = z.disc();
    const Real r = sqrt(Real(d0, wd));
    std::vector<Real> v{S[0], S[0] * r, S[1], S[1] * r, S[2], S[2] * r, Real(1L, wd) / pi2};
    auto rel = pslq(v, height_for(digits, 7), digits);
    if (!rel || (*rel)[6] == 0) return std::nullopt;
    const Rational m6((*rel)[6]);
    auto part = [&](int i) {
        return QuadExt(-Rational((*rel)[static_cast<std::size_t>(2 * i)]) / m6,
                       -Rational((*rel)[static_cast<std::size_t>(2 * i + 1)]) / m6, d0);
    };
    return Coefficients{part(0), part(1), part(2)};
}

// ---- candidates -------------------------------------------------------------

std::string to_string(HuntStatus s) {
    switch (s) {
        case HuntStatus::confirmed: return "confirmed";
        case HuntStatus::unverified: return "unverified";
        case HuntStatus::divergent_side: return "divergent-side";
        case HuntStatus::singular: return "singular";
        case HuntStatus::unidentified: return "unidentified";
    }
    return "unidentified";
}

HuntStatus hunt_status_from_string(const std::string& s) {
    for (HuntStatus h : {HuntStatus::confirmed, HuntStatus::unverified, HuntStatus::divergent_side,
                         HuntStatus::singular, HuntStatus::unidentified}) {
        if (to_string(h) == s) return h;
    }
    throw PreconditionError("unknown hunt status '" + s + "'");
}

KGrid KGrid::parse(const std::string& text) {
    static const std::regex re(R"(\s*i\s*/\s*(\d+)\s*:\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw PreconditionError("k grid must look like i/60:0..1200");
    KGrid g;
    g.den = std::stol(m[1]);
    g.from = std::stol(m[2]);
    g.to = std::stol(m[3]);
    if (g.den <= 0) throw PreconditionError("k grid denominator must be positive");
    return g;
}

std::vector<Rational> KGrid::values() const {
    std::vector<Rational> ks;
    for (long i = from; i <= to; ++i) ks.push_back(Rational(Integer(i), Integer(den)));
    return ks;
}

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CYSERIES_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

HuntContext make_hunt_context(const CaseEntry& entry, int order, int digits) {
    HuntContext ctx;
    ctx.entry = entry;
    ctx.ladder = std::make_shared<const MirrorLadder>(entry.op, order, 8 * order);
    ctx.inv = resolve_invariants(entry, *ctx.ladder, digits);
    ctx.radius = entry.hyper ? entry.hyper->rho.inverse().to_double() : operator_radius(entry.op);
    return ctx;
}

namespace {

Real evaluate_z(const MirrorLadder& ladder, const Real& q, int digits) {
    std::optional<NumericValue> last;
    for (int n : ladder.orders()) {
        try {
            NumericValue v = eval_with_tail(ladder.at(n)->z_of_q, q);
            if (v.tail_estimate < abs(v.value) * pow10(-(digits + 5), q.digits())) return v.value;
            last = v;
        } catch (const NumericError&) {
        }
    }
    if (!last) throw NumericError("z(q) does not converge at this q");
    return last->value;
}

std::vector<long> squarefree_discs(long limit) {
    std::vector<long> out;
    for (long d = 2; d <= limit; ++d) {
        if (squarefree_decompose(Integer(d)).second == d) out.push_back(d);
    }
    return out;
}

std::optional<QuadExt> identify_z(const Real& z) {
    Integer big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 40);
    if (auto r = rationalize(z, big)) return QuadExt(*r);
    static const std::vector<long> discs = squarefree_discs(30);
    return identify_quadratic(z, discs, Integer(1000000000000L));
}

/// Squarefree part of c^2 = tau^2 (1 - rho z) for rational z.
std::optional<long> disc_hint(const HuntContext& ctx, const QuadExt& z, const Rational& tau2) {
    if (!z.is_rational()) return std::nullopt;
    std::optional<Rational> c2;
    if (ctx.entry.hyper) {
        c2 = tau2 * (Rational(1) - ctx.entry.hyper->rho * *z.as_rational());
    } else if (!ctx.entry.e3.empty()) {
        const int wd = 60;
        const Real zr(*z.as_rational(), wd);
        const Real c = coefficient_from_tau_general(ctx.entry.e3, zr, sqrt(Real(tau2, wd)));
        c2 = rationalize(c * c, Integer(1000000000000L));
    }
    if (!c2 || c2->sign() <= 0) return std::nullopt;
    const Integer n = c2->num() * c2->den();
    const Integer d = squarefree_decompose(n).second;
    if (!d.fits_slong_p()) return std::nullopt;
    return d.get_si();
}

void finish_candidate(const HuntContext& ctx, HuntCandidate& c, const HuntOptions& opt) {
    c.z_value = evaluate_z(*ctx.ladder, c.q, opt.digits);
    if (!c.j) {
        c.status = HuntStatus::unidentified;
        c.note = "j not recognized";
        return;
    }
    c.tau2 = tau_squared(ctx.inv, c.k, *c.j);
    c.z = identify_z(c.z_value.with_digits(opt.digits));
    if (c.k.is_zero() && c.j->is_zero()) {
        c.status = HuntStatus::singular;
        c.abc = Coefficients{QuadExt(0), QuadExt(0), QuadExt(0)};
        c.note = "singular solution";
        return;
    }
    if (!c.z) {
        c.status = HuntStatus::unidentified;
        c.note = "z not identified";
        return;
    }
    const double az = std::fabs(c.z_value.to_double());
    if (az > ctx.radius * (1 + 1e-12)) {
        c.status = HuntStatus::divergent_side;
        c.note = "|z| beyond the radius of sum A_n z^n";
        return;
    }
    if (az > 0.5 * ctx.radius) {
        c.status = HuntStatus::unverified;
        c.note = "|z| above half the radius; convergence too slow to recover a, b, c";
        return;
    }
    if (!ctx.entry.seq) {
        c.status = HuntStatus::unverified;
        c.note = "no sequence for A_n";
        return;
    }
    std::vector<long> discs;
    if (auto d = disc_hint(ctx, *c.z, *c.tau2)) discs.push_back(*d);
    try {
        c.abc = recover_abc(*ctx.entry.seq, *c.z, opt.digits, discs);
    } catch (const NumericError& e) {
        c.status = HuntStatus::unverified;
        c.note = e.what();
        return;
    }
    if (!c.abc) {
        c.status = HuntStatus::unverified;
        c.note = "no integer relation for a, b, c";
        return;
    }
    FormulaRecord f;
    f.id = ctx.entry.id;
    f.seq = ctx.entry.seq->str();
    f.z = *c.z;
    f.a = c.abc->a;
    f.b = c.abc->b;
    f.c = c.abc->c;
    f.provenance = Provenance::hunt;
    try {
        c.verified_digits = verify_formula(f, std::max(kMinDigits, opt.digits - 10)).verified_digits;
    } catch (const NumericError& e) {
        c.note = e.what();
    }
    c.status = c.verified_digits >= 40 ? HuntStatus::confirmed : HuntStatus::unverified;
    if (ctx.entry.hyper && c.z->is_rational()) {
        // tau as an independent check on c
        const int wd = opt.digits;
        const Real tau = sqrt(Real(*c.tau2, wd));
        const Real c_tau = coefficient_from_tau_hypergeometric(tau, ctx.entry.hyper->rho, Real(*c.z->as_rational(), wd));
        const Real c_pslq = quad_value(c.abc->c, wd);
        if (abs(c_tau - c_pslq) > pow10(-(wd / 2), wd) * abs(c_tau)) {
            c.note = "c disagrees with tau sqrt(1 - rho z)";
            c.status = HuntStatus::unverified;
        }
    }
}

}  // namespace

std::vector<HuntCandidate> hunt_k(const HuntContext& ctx, const Rational& k, int u, const HuntOptions& opt) {
    std::vector<HuntCandidate> out;
    std::vector<Eq6Root> roots;
    try {
        roots = solve_eq6_all(ctx.inv, k, u, *ctx.ladder, opt.digits);
    } catch (const NumericError&) {
        return out;
    }
    for (const Eq6Root& r : roots) {
        HuntCandidate c;
        c.case_id = ctx.entry.id;
        c.k = k;
        c.u = u;
        c.t = r.t;
        c.q = r.q;
        c.j_value = compute_j(ctx.inv, k, r);
        c.j = recognize_j(c.j_value, opt.j_max_den, opt.j_tol);
        if (!c.j && !opt.keep_unrecognized) continue;
        try {
            finish_candidate(ctx, c, opt);
        } catch (const Error& e) {
            c.status = HuntStatus::unidentified;
            c.note = e.what();
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<HuntCandidate> grid_hunt(const HuntContext& ctx, const std::vector<Rational>& ks, int u,
                                     const HuntOptions& opt) {
    std::vector<std::vector<HuntCandidate>> per_k(ks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < ks.size(); i = next++) per_k[i] = hunt_k(ctx, ks[i], u, opt);
    };
    const int n = std::min<int>(worker_count(opt.workers), static_cast<int>(std::max<std::size_t>(1, ks.size())));
    {
        std::vector<std::jthread> pool;
        for (int i = 1; i < n; ++i) pool.emplace_back(work);
        work();
    }
    std::vector<HuntCandidate> all;
    for (auto& v : per_k) {
        for (auto& c : v) all.push_back(std::move(c));
    }
    std::stable_sort(all.begin(), all.end(), [](const HuntCandidate& a, const HuntCandidate& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.t < b.t;
    });
    return all;
}

}  // namespace cys
