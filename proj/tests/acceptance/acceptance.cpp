// One line per acceptance criterion. Exit status is nonzero when a criterion
// fails without a documented deviation.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "cyseries/cyode.hpp"
#include "cyseries/hunter.hpp"
#include "cyseries/intrel.hpp"
#include "cyseries/mirror.hpp"
#include "cyseries/records.hpp"
#include "cyseries/registry.hpp"
#include "cyseries/verifier.hpp"

using namespace cys;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CYSERIES_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string deviation;  // set when a failure is a documented, unattainable requirement
};

void fail(Outcome& o, const std::string& what) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << s << "s";
    return os.str();
}

// ---- 1: tabulated invariants ------------------------------------------------

struct InvRow {
    const char* id;
    Rational e, h, f;
};

const std::vector<InvRow> kTable2 = {
    {"t1", Rational(11, 3), 42, Rational(16, 5)}, {"t2", Rational(35, 3), 290, 16},
    {"t3", Rational(5, 3), 10, 1},                {"t4", Rational(7, 3), 18, Rational(16, 9)},
    {"t5", 2, 14, Rational(4, 3)},                {"t6", Rational(8, 3), 24, 2},
    {"t7", Rational(23, 3), 150, 8},              {"t8", 5, 70, Rational(16, 3)},
    {"t9", Rational(47, 3), 486, 16},             {"t10", Rational(11, 3), 38, 4},
    {"t11", 3, 28, Rational(8, 3)},               {"t12", Rational(17, 3), 80, 8},
    {"t13", Rational(23, 3), 122, 16},            {"t14", Rational(14, 3), 66, 4},
};

Outcome table_invariants() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& row : kTable2) {
        const Invariants inv = invariants_hypergeometric(find_case(row.id), 60);
        if (!(inv == Invariants{row.e, row.h, row.f})) fail(o, std::string(row.id) + " differs");
    }
    const double s = seconds_since(t0);
    if (s > 60) fail(o, "slower than 1 min");
    if (o.pass) o.detail = "14/14 rows exact in " + fmt_seconds(s);
    return o;
}

// ---- 2, 3: hunt reproductions ----------------------------------------------

struct HuntRow {
    const char* id;
    Rational k;
    int u;
    Rational j;
    Rational z;
    Rational tau2;
    QuadExt a, b, c;
};

QuadExt surd(const Rational& coef, long d) { return QuadExt(Rational(0), coef, d); }

const std::vector<HuntRow>& hunt_rows() {
    static const std::vector<HuntRow> rows = {
        {"t3", 1, -1, 25, Rational(-1, 4096), 5, Rational(1, 8), 1, Rational(5, 2)},
        {"t3", 5, -1, 305, Rational(-1, 1048576), 41, Rational(13, 128), Rational(45, 32), Rational(205, 32)},
        {"t5", Rational(2, 3), 1, 16, Rational(1, 4096), Rational(37, 9), Rational(1, 16), Rational(9, 16),
         Rational(37, 24)},
        {"t6", 2, 1, 80, Rational(1, 65536), 15, Rational(3, 32), Rational(17, 16), Rational(15, 4)},
        {"t8", Rational(5, 3), -1, 85, Rational(-1, 262144), Rational(193, 9), Rational(15, 128), Rational(183, 128),
         Rational(965, 192)},
        {"t8", Rational(8, 3), 1, 160, Rational(1, 1000000), Rational(304, 9), Rational(36, 375), Rational(504, 375),
         Rational(2128, 375)},
        {"t8", 15, -1, 2661, Rational(Integer(-1), Integer(262144) * 729 * 125), Rational(1075, 3),
         surd(Rational(29, 640), 5), surd(Rational(693, 640), 5), surd(Rational(2709, 320), 5)},
        {"t11", 3, -1, 157, Rational(-1, 4096 * 81), 27, Rational(5, 48), Rational(21, 16), Rational(21, 4)},
        {"t12", 7, -1, 757, Rational(Integer(-1), Integer(4194304) * 27), 123, surd(Rational(15, 768), 3),
         surd(Rational(278, 768), 3), surd(Rational(205, 96), 3)},
    };
    return rows;
}

struct HuntRun {
    int code = 0;
    double seconds = 0;
    std::vector<HuntCandidate> candidates;
};

/// Runs the command-line hunt for one k and reads back the persisted candidates.
const HuntRun& hunt_once(const HuntRow& row) {
    static std::map<std::string, HuntRun> cache;
    const std::string key = std::string(row.id) + "/" + row.k.str() + "/" + std::to_string(row.u);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const fs::path store = fs::temp_directory_path() / ("cyseries_acceptance_" + std::to_string(cache.size()) + ".jsonl");
    fs::remove(store);
    const std::string grid =
        "i/" + to_string(row.k.den()) + ":" + to_string(row.k.num()) + ".." + to_string(row.k.num());
    std::ostringstream out, err;
    const auto t0 = std::chrono::steady_clock::now();
    HuntRun run;
    run.code = cli::run({"cyseries", "--store", store.string(), "hunt", row.id, "--k-grid", grid, "--sign",
                         row.u > 0 ? "+" : "-", "--digits", "120", "--order", "100"},
                        out, err);
    run.seconds = seconds_since(t0);
    for (const auto& line : ResultStore(store).lines()) run.candidates.push_back(candidate_from_json(line));
    fs::remove(store);
    return cache.emplace(key, std::move(run)).first->second;
}

const HuntCandidate* matching_candidate(const HuntRow& row, const HuntRun& run) {
    for (const auto& h : run.candidates) {
        if (h.k == row.k && h.u == row.u && h.j && *h.j == row.j) return &h;
    }
    return nullptr;
}

Outcome table_hunt() {
    Outcome o;
    double slowest = 0;
    int other_failures = 0;
    bool t12_scaled = false;
    for (const auto& row : hunt_rows()) {
        const std::string tag = std::string(row.id) + " k=" + row.k.str();
        const HuntRun& run = hunt_once(row);
        slowest = std::max(slowest, run.seconds);
        std::string problem;
        const HuntCandidate* h = run.code == 0 ? matching_candidate(row, run) : nullptr;
        if (run.code != 0) {
            problem = "exit " + std::to_string(run.code);
        } else if (!h) {
            problem = "j=" + row.j.str() + " not found";
        } else if (!h->z || !(*h->z == QuadExt(row.z))) {
            problem = "z differs";
        } else if (!h->tau2 || *h->tau2 != row.tau2) {
            problem = "tau^2 differs";
        } else if (!h->abc) {
            problem = "a, b, c not recovered";
        } else if (run.seconds > 300) {
            problem = "slower than 5 min";
        }
        if (!problem.empty()) {
            fail(o, tag + ": " + problem);
            ++other_failures;
            continue;
        }
        if (h->abc->a == row.a && h->abc->b == row.b && h->abc->c == row.c) continue;
        fail(o, tag + ": a, b, c = " + h->abc->a.str() + ", " + h->abc->b.str() + ", " + h->abc->c.str());
        const QuadExt ratio = h->abc->c / row.c;
        if (std::string(row.id) == "t12" && ratio == QuadExt(3) && h->abc->a == ratio * row.a &&
            h->abc->b == ratio * row.b) {
            t12_scaled = true;
        } else {
            ++other_failures;
        }
    }
    if (o.pass) {
        o.detail = "9/9 rows exact; slowest " + fmt_seconds(slowest);
    } else if (t12_scaled && other_failures == 0) {
        o.detail = "8/9 rows exact, row t12 matches j, z, tau^2 but not the printed a, b, c; slowest " +
                   fmt_seconds(slowest) + "; " + o.detail;
        o.deviation = "the printed a, b, c of row 12~ sum to 1/(3 pi^2); the hunt returns the consistent values "
                      "with c = tau sqrt(1 - rho z) = 205 sqrt3/32";
    }
    return o;
}

Outcome new_series_endpoint() {
    Outcome o;
    const HuntRow& row = hunt_rows()[5];
    const HuntCandidate* h = matching_candidate(row, hunt_once(row));
    if (!h || !h->abc || !h->z) {
        fail(o, "hunt did not produce k = 8/3");
        return o;
    }
    const Rational scale(375, 4);
    const QuadExt a = h->abc->a * QuadExt(scale), b = h->abc->b * QuadExt(scale), c = h->abc->c * QuadExt(scale);
    if (!(*h->z == QuadExt(Rational(1, 1000000)))) fail(o, "z != 10^-6");
    if (!(a == QuadExt(9) && b == QuadExt(126) && c == QuadExt(532))) fail(o, "polynomial is not 532n^2+126n+9");

    FormulaRecord f;
    f.id = "sextic";
    f.seq = "fact(6*n)/fact(n)^6";
    f.z = *h->z;
    f.a = a;
    f.b = b;
    f.c = c;
    f.rhs = scale;
    const SeqExpr sextic = SeqExpr::parse(f.seq);
    const SeqExpr table = SeqExpr::parse(find_case("t8").binomial_form);
    for (long n = 0; n <= 20; ++n) {
        if (sextic.eval(n) != table.eval(n)) fail(o, "sequence mismatch at n=" + std::to_string(n));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const VerifyResult r = verify_formula(f, 110);
    const double s = seconds_since(t0);
    if (r.verified_digits < 100) fail(o, "only " + std::to_string(r.verified_digits) + " digits");
    if (s > 60) fail(o, "verification slower than 1 min");
    if (o.pass) o.detail = std::to_string(r.verified_digits) + " digits against 375/(4 pi^2) in " + fmt_seconds(s);
    return o;
}

// ---- 4: singular solutions --------------------------------------------------

Outcome singular_solutions() {
    Outcome o;
    for (const char* id : {"t3", "t6", "t8"}) {
        const CaseSpec& cs = find_case(id);
        const MirrorLadder ladder(hypergeometric_operator(cs), 50, 400);
        const SingularInvariants si = invariants_from_singularity(ladder, 60);
        const Real err = abs(si.point.z0 * cs.rho - Real(1L, 60));
        if (!(err < pow10(-30, 60))) fail(o, std::string(id) + ": z0 off by " + err.str(3));
        if (!(si.inv == invariants_hypergeometric(cs, 60))) fail(o, std::string(id) + ": PSLQ invariants differ");
    }
    if (o.pass) o.detail = "t3, t6, t8: z0 = 1/rho to 30 digits, PSLQ e, h, f equal the closed forms";
    return o;
}

// ---- 5: structural identities -----------------------------------------------

Outcome structural_identities() {
    Outcome o;
    const int order = 40;
    for (const auto& c : builtin_cases()) {
        const ThetaOperator op = hypergeometric_operator(c);
        const MirrorData M = build_mirror(op, order);
        const std::string id = c.id + ": ";
        if (!(M.H.H1 == M.H.H2 * M.H.H2 * Rational(1, 2))) fail(o, id + "H1 != H2^2/2");
        if (!(theta(theta(theta(M.T_q))) + M.K_q == RationalSeries::constant(Rational(1), order)))
            fail(o, id + "theta^3 T + K != 1");
        if (!M.T_q[0].is_zero()) fail(o, id + "T(0) != 0");
        for (int n = 0; n <= 25; ++n) {
            if (!M.q_of_z[n].is_integer()) fail(o, id + "q(z)/z not integral at " + std::to_string(n));
        }
        if (!check_condition_25(op)) fail(o, id + "condition fails");
        const SeqExpr e = SeqExpr::parse(c.binomial_form);
        for (long n = 0; n <= 20; ++n) {
            if (pochhammer_term(c, n) != Rational(e.eval(n))) fail(o, id + "A_n mismatch at " + std::to_string(n));
        }
    }
    if (o.pass) o.detail = "14 rows, order 40, all identities exact";
    return o;
}

// ---- 6: the (t0 + pi)^3 relation --------------------------------------------

Outcome remarkable_relation() {
    Outcome o;
    const MirrorLadder ladder(hypergeometric_operator(find_case("t3")), 50, 400);
    const RemarkableResult r = check_remarkable_relation(ladder, 80);
    const Real res = abs(r.residual);
    if (!(res < pow10(-50, 80))) fail(o, "residual " + res.str(3));
    if (o.pass) o.detail = "residual " + res.str(3) + " at 80 digits";
    return o;
}

// ---- 7: supercongruences ----------------------------------------------------

Outcome supercongruences() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    int checks = 0;
    for (const CongruenceSpec& spec : load_congruences(kData / "congruences" / "supercongruences.json")) {
        if (spec.id == "sextic") {
            if (spec.mod_exp != 5) fail(o, "sextic record is not mod p^5");
            for (long p : {7L, 11L, 13L, 17L, 19L}) {
                ++checks;
                if (!check_supercongruence(spec, p).holds) fail(o, "sextic p=" + std::to_string(p));
            }
            continue;
        }
        int applicable = 0;
        for (long p = 3; p < 50; ++p) {
            if (!is_prime(p)) continue;
            const CongruenceResult r = check_supercongruence(spec, p);
            if (!r.applicable) continue;
            ++applicable;
            ++checks;
            if (!r.holds) fail(o, spec.id + " p=" + std::to_string(p));
        }
        if (applicable < 10) fail(o, spec.id + ": too few primes checked");
    }
    const double s = seconds_since(t0);
    if (checks != 5 + 13 + 12 + 13 + 12 + 11) fail(o, "unexpected number of checks " + std::to_string(checks));
    if (s > 60) fail(o, "slower than 1 min");
    if (o.pass) o.detail = std::to_string(checks) + " prime checks hold in " + fmt_seconds(s);
    return o;
}

// ---- 8: non-hypergeometric series ------------------------------------------

Outcome hadamard_series() {
    Outcome o;
    const std::vector<std::string> wanted = {"Aalpha-k1/3", "Beps-k1",     "Abeta-k1",
                                             "Bbeta-k1/3",  "Adelta-k2/3", "Atheta-k2"};
    const auto records = load_formulas(kData / "formulas" / "hadamard.json");
    std::string digits;
    for (const auto& id : wanted) {
        auto it = std::find_if(records.begin(), records.end(), [&](const FormulaRecord& f) { return f.id == id; });
        if (it == records.end()) {
            fail(o, id + " missing");
            continue;
        }
        const VerifyResult r = verify_formula(*it, 50);
        if (r.verified_digits < 40) fail(o, id + ": " + std::to_string(r.verified_digits) + " digits");
        digits += (digits.empty() ? "" : ", ") + std::to_string(r.verified_digits);
    }
    for (const auto& f : load_formulas(kData / "formulas" / "transformations.json")) {
        if (f.id == "tr3-1025" && f.status == Status::confirmed) fail(o, "the 1025^n series is marked confirmed");
    }
    if (o.pass) o.detail = "digits " + digits + "; the 1025^n series stays unverified";
    return o;
}

// ---- 9: PSLQ planted relations ----------------------------------------------

Outcome pslq_suite() {
    Outcome o;
    const int D = 100;
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> coeff(-10000, 10000);
    std::uniform_int_distribution<int> len(2, 6);
    const long primes[] = {2, 3, 5, 7, 11};
    int recovered = 0, false_positive = 0;

    for (int t = 0; t < 100; ++t) {
        const int n = len(rng);
        std::vector<Integer> c(static_cast<std::size_t>(n));
        for (auto& x : c) {
            do x = coeff(rng); while (x == 0);
        }
        auto values = [&](int digits) {
            std::vector<Real> v;
            Real acc(0L, digits);
            for (int i = 0; i + 1 < n; ++i) {
                v.push_back(log(Real(primes[i], digits)));
                acc += Real(c[static_cast<std::size_t>(i)], digits) * v.back();
            }
            v.push_back(-acc / Real(c.back(), digits));
            return v;
        };
        const auto rel = pslq(values(D), Integer(10000), D);
        if (!rel) continue;
        if (!(relation_residual(values(2 * D), *rel) < pow10(-(2 * D - 20), 2 * D))) {
            ++false_positive;
            continue;
        }
        // The planted vector, made primitive with a positive leading entry.
        Integer g = 0;
        for (const auto& x : c) g = gcd(g, x);
        std::vector<Integer> want = c;
        for (auto& x : want) x /= (c.front() > 0 ? g : Integer(-g));
        if (*rel == want) ++recovered;
    }
    // Independent constants: any reported relation is a false positive.
    for (int t = 0; t < 20; ++t) {
        std::vector<Real> v{const_pi(D), const_zeta3(D), log(Real(2L, D)), sqrt(Real(static_cast<long>(t + 2), D))};
        if (pslq(v, Integer(10000), D)) {
            const long r = static_cast<long>(std::sqrt(t + 2.0));
            if (r * r != t + 2) ++false_positive;
        }
    }
    if (recovered != 100) fail(o, std::to_string(recovered) + "/100 recovered");
    if (false_positive != 0) fail(o, std::to_string(false_positive) + " false positives");
    if (o.pass) o.detail = "100/100 recovered, 0 false positives at 200-digit re-validation";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "hypergeometric invariants table", table_invariants},
        {2, "convergent series table via hunt", table_hunt},
        {3, "new series endpoint", new_series_endpoint},
        {4, "singular solutions", singular_solutions},
        {5, "structural identities", structural_identities},
        {6, "(t0 + pi)^3 relation", remarkable_relation},
        {7, "supercongruences", supercongruences},
        {8, "non-hypergeometric series", hadamard_series},
        {9, "PSLQ robustness", pslq_suite},
    };
    int unexpected = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            fail(o, std::string("exception: ") + e.what());
        }
        const std::string verdict = o.pass ? "PASS" : (o.deviation.empty() ? "FAIL" : "FAIL (documented)");
        std::cout << "criterion " << c.number << ": " << verdict << ": " << c.title << ": " << o.detail;
        if (!o.deviation.empty()) std::cout << " [" << o.deviation << "]";
        std::cout << " (" << fmt_seconds(seconds_since(t0)) << ")" << std::endl;
        if (!o.pass && o.deviation.empty()) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
