#include "cyseries/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace cys {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::paper_table: return "paper-table";
        case Provenance::hunt: return "hunt";
        case Provenance::user: return "user";
    }
    return "user";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::confirmed: return "confirmed";
        case Status::unverified: return "unverified";
        case Status::failed: return "failed";
    }
    return "unverified";
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "paper-table") return Provenance::paper_table;
    if (s == "hunt") return Provenance::hunt;
    if (s == "user") return Provenance::user;
    throw PreconditionError("unknown provenance '" + s + "'");
}

Status status_from_string(const std::string& s) {
    if (s == "confirmed") return Status::confirmed;
    if (s == "unverified") return Status::unverified;
    if (s == "failed") return Status::failed;
    throw PreconditionError("unknown status '" + s + "'");
}

namespace {

int matched_digits(const Real& x, const Real& ref, int cap) {
    const Real diff = abs(x - ref);
    if (diff.is_zero()) return cap;
    Real rel = ref.is_zero() ? diff : diff / abs(ref);
    const long d = -(rel.log10_floor() + 1);
    return static_cast<int>(std::clamp<long>(d, 0, cap));
}

int bound_digits(const Real& bound, const Real& ref, int cap) {
    if (bound.is_zero()) return cap;
    Real rel = ref.is_zero() ? bound : bound / abs(ref);
    const long d = -(rel.log10_floor() + 1);
    return static_cast<int>(std::clamp<long>(d, 0, cap));
}

Real max_abs(const std::vector<Real>& u, std::size_t from, std::size_t to) {
    Real m = abs(u[from]);
    for (std::size_t i = from + 1; i < to; ++i) {
        Real a = abs(u[i]);
        if (a > m) m = a;
    }
    return m;
}

/// Terms A_n (a + b n + c n^2) z^n, generated on demand.
class TermSource {
public:
    TermSource(const FormulaRecord& f, int wd)
        : seq_(SeqExpr::parse(f.seq)),
          z_(quad_value(f.z, wd)),
          a_(quad_value(f.a, wd)),
          b_(quad_value(f.b, wd)),
          c_(quad_value(f.c, wd)),
          zn_(1L, wd),
          wd_(wd) {}

    Real next() {
        const long n = n_++;
        Real poly = a_ + b_ * n + c_ * n * n;
        Real t = Real(seq_.eval(n), wd_) * poly * zn_;
        zn_ *= z_;
        return t;
    }

private:
    SeqExpr seq_;
    Real z_, a_, b_, c_, zn_;
    int wd_;
    long n_ = 0;
};

// Error of the alternating accelerator after n terms is about 5.83^-n.
int crvz_terms(int digits) { return static_cast<int>(std::ceil((digits + 10) / 0.7655)) + 10; }

}  // namespace

Real alternating_sum(const std::vector<Real>& a) {
    if (a.empty()) throw PreconditionError("alternating_sum needs at least one term");
    const long n = static_cast<long>(a.size());
    const int wd = a.front().digits() + static_cast<int>(n * 0.77) + 5;
    Real d = pow(Real(3L, wd) + sqrt(Real(8L, wd)), n);
    d = (d + Real(1L, wd) / d) / 2L;
    Real b(-1L, wd);
    Real c = -d;
    Real s(0L, wd);
    for (long k = 0; k < n; ++k) {
        c = b - c;
        s += c * a[static_cast<std::size_t>(k)].with_digits(wd);
        // b *= (k + n)(k - n) / ((k + 1/2)(k + 1)) = 2(k + n)(k - n) / ((2k + 1)(k + 1))
        b *= 2 * (k + n) * (k - n);
        b /= (2 * k + 1) * (k + 1);
    }
    return (s / d).with_digits(a.front().digits());
}

VerifyResult verify_formula(const FormulaRecord& f, int digits, const VerifyOptions& opt) {
    if (digits < kMinDigits) throw PreconditionError("verification needs at least 20 digits");
    const int wd = digits + 20;
    TermSource src(f, wd);
    VerifyResult res;
    const Real pi = const_pi(wd);
    res.rhs = (quad_value(f.rhs, wd) / (pi * pi)).with_digits(digits);
    const Real rhs_w = quad_value(f.rhs, wd) / (pi * pi);
    const Real target = pow10(-(digits + 5), wd) * abs(rhs_w);

    if (f.a.is_zero() && f.b.is_zero() && f.c.is_zero()) {
        // Every term vanishes; the sum is exactly zero.
        res.method = "exact";
        res.converged = true;
        res.lhs = Real(0L, digits);
        res.tail_bound = Real(0L, digits);
        res.verified_digits = f.rhs.is_zero() ? digits : 0;
        return res;
    }

    std::vector<Real> u;
    Real sum(0L, wd);
    constexpr std::size_t kWin = 10;
    for (int n = 0; n < opt.max_terms; ++n) {
        u.push_back(src.next());
        sum += u.back();
        const std::size_t len = u.size();
        if (len < 3 * kWin) continue;
        const Real& last = u.back();
        if (last.is_zero() && max_abs(u, len - kWin, len).is_zero()) {
            // Terminating-looking tail: keep going until the window shows decay.
            continue;
        }

        // Ratio test on the last window.
        bool ratio_ok = true;
        Real r(0L, wd);
        for (std::size_t i = len - kWin; i < len; ++i) {
            if (u[i - 1].is_zero()) {
                ratio_ok = false;
                break;
            }
            Real q = abs(u[i] / u[i - 1]);
            if (q > r) r = q;
        }
        const Real nine_tenths(Rational(9, 10), wd);
        if (ratio_ok && r < nine_tenths) {
            Real bound = abs(last) * r / (Real(1L, wd) - r);
            if (bound < target) {
                res.method = "ratio";
                res.tail_bound = bound.with_digits(digits);
                res.converged = true;
                break;
            }
            continue;
        }

        // Window maxima: block-geometric decay for oscillating terms.
        const Real m1 = max_abs(u, len - 2 * kWin, len - kWin);
        const Real m2 = max_abs(u, len - kWin, len);
        if (!m1.is_zero() && m2 < m1) {
            const Real rho = m2 / m1;  // decay per block
            if (rho < nine_tenths) {
                Real bound = m2 * kWin * rho / (Real(1L, wd) - rho);
                if (bound < target) {
                    res.method = "window";
                    res.tail_bound = bound.with_digits(digits);
                    res.converged = true;
                    break;
                }
                continue;
            }
        }
        if (len >= 4 * kWin && m2 > m1 * 2L) {
            const Real m0 = max_abs(u, len - 4 * kWin, len - 3 * kWin);
            if (m2 > m0 * 4L) throw NumericError("series terms grow: z lies outside the radius of convergence");
        }

        // Slow alternating decay: accelerate.
        bool alternating = m2 < m1;
        for (std::size_t i = len - 2 * kWin; i < len; ++i) {
            if (u[i].sign() == 0 || u[i].sign() == u[i - 1].sign()) {
                alternating = false;
                break;
            }
        }
        if (alternating) {
            const int nc = crvz_terms(digits);
            while (static_cast<int>(u.size()) < nc + 20) u.push_back(src.next());
            std::vector<Real> a;
            for (std::size_t k = 0; k < u.size(); ++k) a.push_back(k % 2 == 0 ? u[k] : -u[k]);
            std::vector<Real> a1(a.begin(), a.begin() + nc);
            const Real s1 = alternating_sum(a1);
            const Real s2 = alternating_sum(a);
            const Real amax = max_abs(a, 0, a.size());
            Real bound = abs(s1 - s2) + amax * 2L / pow(Real(3L, wd) + sqrt(Real(8L, wd)), nc + 20);
            sum = s2;
            res.method = "crvz";
            res.tail_bound = bound.with_digits(digits);
            res.converged = bound < target;
            break;
        }
    }
    if (res.method.empty()) {
        res.method = "partial";
        res.tail_bound = abs(u.back()).with_digits(digits);
        res.converged = false;
    }
    res.terms = static_cast<int>(u.size());
    res.lhs = sum.with_digits(digits);
    int m = matched_digits(sum, rhs_w, digits);
    if (res.method != "partial") m = std::min(m, bound_digits(res.tail_bound, rhs_w, digits));
    res.verified_digits = m;
    return res;
}

// ---- (t0 + pi)^3 relation -------------------------------------------------

namespace {

struct InverseResult {
    Real q;
    Real tail;
};

/// Solves z(q) = z0 near q = z0 by Newton iteration.
InverseResult invert_z(const MirrorData& M, const Real& z0) {
    const int wd = z0.digits();
    const RationalSeries dz = derivative(M.z_of_q);
    Real q = z0;
    const Real eps = pow10(-(wd - 3), wd);
    bool done = false;
    for (int iter = 0; iter < 200 && !done; ++iter) {
        const Real v = eval_with_tail(M.z_of_q, q).value - z0;
        const Real d = eval_with_tail(dz, q).value;
        if (d.is_zero()) throw NumericError("z(q) = z0: vanishing derivative");
        const Real step = v / d;
        q -= step;
        if (abs(step) < eps * abs(q)) done = true;
    }
    if (!done) throw NumericError("z(q) = z0 has no real solution near q = z0");
    NumericValue zv = eval_with_tail(M.z_of_q, q);
    if (abs(zv.value - z0) > abs(z0) * pow10(-(wd - 10), wd)) {
        throw NumericError("z(q) = z0 has no real solution near q = z0");
    }
    return {q, zv.tail_estimate};
}

}  // namespace

RemarkableResult check_remarkable_relation(const MirrorLadder& ladder, int digits, long zeta_coef, int u) {
    if (u != 1 && u != -1) throw PreconditionError("sign u must be +1 or -1");
    const int wd = digits + 20;
    const Real z0(Rational(u, 1024), wd);
    const Real goal = pow10(-(digits + 5), wd);
    std::optional<InverseResult> inv;
    for (int n : ladder.orders()) {
        try {
            InverseResult r = invert_z(*ladder.at(n), z0);
            inv = r;
            if (r.tail < goal * abs(z0)) break;
        } catch (const NumericError&) {
            if (n == ladder.orders().back()) throw;
        }
    }
    if (!inv) throw NumericError("z(q) = z0 could not be inverted");
    const Real q0 = inv->q;
    const Real t0 = log(abs(q0));
    const TValues tv = ladder.evaluate_T(q0, wd - 5);
    const Real pi = const_pi(wd);
    const Real s = t0 + pi;
    Real r = s * s * s / 6L - pi * pi * s * Rational(5, 6) - pi * pi * pi / 3L - const_zeta3(wd) * zeta_coef - tv.T;
    return {r.with_digits(digits), q0.with_digits(digits), t0.with_digits(digits)};
}

// ---- transformation #77 ---------------------------------------------------

namespace {

Integer central_binomial(long n) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
    return r;
}

Integer binomial(long n, long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer lhs77(long n) {
    Integer c = central_binomial(n);
    return c * c * c * c * binomial(4 * n, 2 * n);
}

Integer seq77(long n) {
    Integer s = 0;
    for (long i = 0; i <= n; ++i) {
        Integer c = central_binomial(i);
        s += binomial(n, i) * c * c * c * binomial(4 * i, 2 * i);
    }
    return central_binomial(n) * s;
}

/// sum c(n) x^n summed until the terms fall below 10^-(digits+5) of the sum.
template <typename Coef>
Real sum_series(Coef coef, const Real& x, int digits) {
    const int wd = x.digits();
    Real s(0L, wd), xn(1L, wd);
    const Real eps = pow10(-(digits + 5), wd);
    int small = 0;
    for (long n = 0; n < 20000; ++n) {
        Real t = Real(coef(n), wd) * xn;
        s += t;
        if (abs(t) < eps * abs(s)) {
            if (++small >= 3) return s;
        } else {
            small = 0;
        }
        xn *= x;
    }
    throw NumericError("series did not converge within 20000 terms");
}

}  // namespace

TransformationResult check_transformation_77(const Rational& z, int digits, int exact_order) {
    TransformationResult r;
    const int wd = digits + 20;

    // Exact coefficients of both sides.
    const int N = exact_order;
    RationalSeries L(N), A(N), inv_plus(N), inv_minus(N);
    for (int n = 0; n <= N; ++n) {
        L[n] = Rational(lhs77(n));
        A[n] = Rational(seq77(n));
        const Rational c(central_binomial(n));
        inv_minus[n] = c;                    // (1 - 4z)^(-1/2)
        inv_plus[n] = n % 2 == 0 ? c : -c;  // (1 + 4z)^(-1/2)
    }
    RationalSeries one_plus(N);
    one_plus[0] = 1;
    if (N >= 1) one_plus[1] = 4;
    const RationalSeries w = RationalSeries::variable(N) * inverse(one_plus);
    const RationalSeries Aw = compose(A, w);
    r.exact_order = N;
    r.exact_corrected_matches = (inv_plus * Aw) == L;
    r.exact_printed_matches = (inv_minus * Aw) == L;
    r.sign_slip_flagged = r.exact_corrected_matches && !r.exact_printed_matches;

    r.in_radius = z.abs() < Rational(1, 4096);
    if (!r.in_radius) return r;
    const Real zr(z, wd);
    const Real wr = zr / (Real(1L, wd) + zr * 4L);
    r.lhs = sum_series(lhs77, zr, digits);
    const Real s = sum_series(seq77, wr, digits);
    r.rhs_corrected = s / sqrt(Real(1L, wd) + zr * 4L);
    r.rhs_printed = s / sqrt(Real(1L, wd) - zr * 4L);
    r.residual_corrected = (r.lhs - r.rhs_corrected).with_digits(digits);
    r.residual_printed = (r.lhs - r.rhs_printed).with_digits(digits);
    r.lhs = r.lhs.with_digits(digits);
    r.rhs_corrected = r.rhs_corrected.with_digits(digits);
    r.rhs_printed = r.rhs_printed.with_digits(digits);
    return r;
}

// ---- supercongruences -----------------------------------------------------

bool is_prime(long p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) > 0;
}

int legendre(const Integer& d, long p) {
    if (p < 3 || !is_prime(p)) throw PreconditionError("legendre symbol needs an odd prime");
    Integer r;
    Integer dm = d % p;
    if (dm < 0) dm += p;
    if (dm == 0) return 0;
    mpz_powm_ui(r.get_mpz_t(), dm.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), Integer(p).get_mpz_t());
    return r == 1 ? 1 : -1;
}

namespace {

bool congruence_applicable(const CongruenceSpec& spec, long p, std::string& why) {
    if (!is_prime(p)) {
        why = "not prime";
        return false;
    }
    if (p < spec.min_prime) {
        why = "below the smallest admissible prime";
        return false;
    }
    if (std::find(spec.excluded.begin(), spec.excluded.end(), p) != spec.excluded.end()) {
        why = "excluded prime";
        return false;
    }
    for (const Rational* x : {&spec.z, &spec.a, &spec.b, &spec.c, &spec.expected}) {
        if (x->den() % p == 0) {
            why = "p divides a denominator";
            return false;
        }
    }
    return true;
}

/// (lhs, rhs) residues modulo p^e.
std::pair<Integer, Integer> congruence_sides(const CongruenceSpec& spec, long p, long e) {
    Integer mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    const SeqExpr seq = SeqExpr::parse(spec.seq);
    const Integer zm = mod_rational(spec.z, mod);
    const Integer am = mod_rational(spec.a, mod), bm = mod_rational(spec.b, mod), cm = mod_rational(spec.c, mod);
    Integer s = 0, zn = 1;
    for (long n = 0; n < p; ++n) {
        Integer poly = (am + bm * n + cm * n * n) % mod;
        s = (s + seq.eval_mod(n, mod) * poly % mod * zn) % mod;
        zn = zn * zm % mod;
    }
    int symbol = spec.legendre_disc == 1 ? 1 : legendre(Integer(spec.legendre_disc), p);
    Integer rhs = mod_rational(spec.expected, mod) * (symbol) * (Integer(p) * p) % mod;
    if (rhs < 0) rhs += mod;
    if (s < 0) s += mod;
    return {s, rhs};
}

}  // namespace

bool congruence_holds_mod(const CongruenceSpec& spec, long p, long exponent) {
    std::string why;
    if (!congruence_applicable(spec, p, why)) throw PreconditionError("congruence not applicable at p: " + why);
    auto [l, r] = congruence_sides(spec, p, exponent);
    return l == r;
}

CongruenceResult check_supercongruence(const CongruenceSpec& spec, long p) {
    CongruenceResult res;
    res.p = p;
    if (!congruence_applicable(spec, p, res.note)) {
        res.applicable = false;
        return res;
    }
    const long top = spec.mod_exp + 2;
    auto [l, r] = congruence_sides(spec, p, top);
    Integer mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(spec.mod_exp));
    res.lhs_residue = l % mod;
    res.rhs_residue = r % mod;
    res.holds = res.lhs_residue == res.rhs_residue;
    Integer pe = 1;
    for (long e = 1; e <= top; ++e) {
        pe *= p;
        if (l % pe != r % pe) break;
        res.holds_to = e;
    }
    return res;
}

}  // namespace cys
