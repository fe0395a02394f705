#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <regex>

#include "CLI11.hpp"
#include "cyseries/hunter.hpp"
#include "cyseries/records.hpp"
#include "cyseries/registry.hpp"
#include "cyseries/verifier.hpp"

namespace cys::cli {

namespace {

struct Settings {
    std::string store = "cyseries-results.jsonl";
    bool no_store = false;

    std::string target;
    int order = 50;
    int digits = 50;

    std::string grid = "i/3:0..60";
    std::string sign = "both";
    int workers = 0;
    bool keep_unrecognized = false;

    bool singular = false;

    std::string file;
    std::string id;
    int max_terms = 4000;
    std::string primes = "5..50";
    long mod_exp = 0;
};

std::optional<ResultStore> open_store(const Settings& s) {
    if (s.no_store || s.store.empty()) return std::nullopt;
    return ResultStore(s.store);
}

std::string compact(const QuadExt& q) {
    std::string s = q.str();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

CaseEntry load_target(const std::string& target) {
    if (target.find('/') != std::string::npos || target.find('.') != std::string::npos) {
        if (!std::filesystem::exists(target)) throw PreconditionError("operator file '" + target + "' not found");
    }
    return resolve_case(target);
}

int cmd_frobenius(const Settings& s, std::ostream& out) {
    if (s.order < 0) throw PreconditionError("order must be non-negative");
    const CaseEntry entry = load_target(s.target);
    const FrobeniusBasis F = frobenius_solve(entry.op, s.order);
    for (std::size_t i = 0; i < F.a.size(); ++i) {
        out << "a" << i << ":";
        for (int n = 0; n <= s.order; ++n) out << (n ? ", " : " ") << F.a[i][n];
        out << "\n";
    }
    return kOk;
}

int cmd_invariants(const Settings& s, std::ostream& out) {
    const CaseEntry entry = load_target(s.target);
    const MirrorLadder ladder(entry.op, s.order, 8 * s.order);
    Invariants inv;
    std::string source;
    if (s.singular) {
        inv = invariants_from_singularity(ladder, s.digits).inv;
        source = "singular point";
    } else {
        inv = resolve_invariants(entry, ladder, s.digits);
        source = entry.invariants ? "override" : (entry.hyper ? "closed form" : "singular point");
    }
    out << "e = " << inv.e << "\nh = " << inv.h << "\nf = " << inv.f << "\nsource: " << source << "\n";
    return kOk;
}

void print_candidate(std::ostream& out, const HuntCandidate& h) {
    out << h.case_id << " k=" << h.k << " u=" << (h.u > 0 ? "+1" : "-1");
    out << " j=" << (h.j ? h.j->str() : h.j_value.str(15));
    out << " z=" << (h.z ? compact(*h.z) : h.z_value.str(15));
    if (h.tau2) out << " tau2=" << *h.tau2;
    if (h.abc) out << " a=" << compact(h.abc->a) << " b=" << compact(h.abc->b) << " c=" << compact(h.abc->c);
    out << " digits=" << h.verified_digits << " " << to_string(h.status);
    if (!h.note.empty()) out << " (" << h.note << ")";
    out << "\n";
}

int cmd_hunt(const Settings& s, std::ostream& out) {
    const KGrid grid = KGrid::parse(s.grid);
    std::vector<int> signs;
    if (s.sign == "+" || s.sign == "both") signs.push_back(1);
    if (s.sign == "-" || s.sign == "both") signs.push_back(-1);
    if (signs.empty()) throw PreconditionError("sign must be +, - or both");
    const std::vector<Rational> ks = grid.values();
    const CaseEntry entry = load_target(s.target);
    if (ks.empty()) return kOk;

    const HuntContext ctx = make_hunt_context(entry, s.order, s.digits);
    HuntOptions opt;
    opt.digits = s.digits;
    opt.workers = s.workers;
    opt.keep_unrecognized = s.keep_unrecognized;
    auto store = open_store(s);
    for (int u : signs) {
        for (const HuntCandidate& h : grid_hunt(ctx, ks, u, opt)) {
            print_candidate(out, h);
            if (store) store->append(candidate_to_json(h));
        }
    }
    return kOk;
}

template <class T>
std::vector<T> select(std::vector<T> all, const std::string& id, const std::string& file) {
    if (id.empty()) return all;
    std::erase_if(all, [&](const T& r) { return r.id != id; });
    if (all.empty()) throw PreconditionError("no record '" + id + "' in " + file);
    return all;
}

int cmd_verify(const Settings& s, std::ostream& out) {
    const auto records = select(load_formulas(s.file), s.id, s.file);
    VerifyOptions opt;
    opt.max_terms = s.max_terms;
    auto store = open_store(s);
    int code = kOk;
    for (const FormulaRecord& f : records) {
        out << f.id << ": ";
        VerifyResult r;
        try {
            r = verify_formula(f, s.digits, opt);
        } catch (const NumericError& e) {
            out << "numeric failure: " << e.what() << "\n";
            code = kNumeric;
            continue;
        }
        if (store) store->append(verify_report_to_json(f, s.digits, r));
        const bool ok = r.converged && r.verified_digits >= s.digits - 10;
        if (ok) {
            out << "verified " << r.verified_digits << " digits";
        } else if (!r.converged) {
            out << "partial: " << r.verified_digits << " digits after " << r.terms << " terms";
            code = kNumeric;
        } else {
            out << "MISMATCH: agrees to " << r.verified_digits << " digits";
            code = kNumeric;
        }
        out << " (" << r.method << ", " << r.terms << " terms)";
        if (f.status == Status::unverified && !f.note.empty()) out << " [" << f.note << "]";
        out << "\n";
    }
    return code;
}

std::pair<long, long> parse_prime_range(const std::string& text) {
    static const std::regex re(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw PreconditionError("primes must look like 5..50");
    return {std::stol(m[1]), std::stol(m[2])};
}

int cmd_congruence(const Settings& s, std::ostream& out) {
    auto specs = select(load_congruences(s.file), s.id, s.file);
    const auto [lo, hi] = parse_prime_range(s.primes);
    if (s.mod_exp != 0) {
        if (s.mod_exp < 1) throw PreconditionError("mod-exp must be positive");
        for (auto& c : specs) c.mod_exp = s.mod_exp;
    }
    auto store = open_store(s);
    int code = kOk;
    for (const CongruenceSpec& c : specs) {
        for (long p = std::max(lo, 2L); p <= hi; ++p) {
            if (!is_prime(p)) continue;
            const CongruenceResult r = check_supercongruence(c, p);
            out << c.id << " p=" << p << ": ";
            if (!r.applicable) {
                out << "skipped (" << r.note << ")\n";
                continue;
            }
            if (store) store->append(congruence_report_to_json(c, r));
            if (r.holds) {
                out << "holds mod p^" << c.mod_exp;
                if (r.holds_to > c.mod_exp) out << " (also mod p^" << r.holds_to << ")";
            } else {
                out << "FAILS mod p^" << c.mod_exp << " (left " << to_string(r.lhs_residue) << ", right "
                    << to_string(r.rhs_residue) << ")";
                code = kNumeric;
            }
            out << "\n";
        }
    }
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Search and verification of Ramanujan-like series for 1/pi^2", "cyseries"};
    app.require_subcommand(1);
    app.add_option("--store", s.store, "Append results to this JSON-lines file")->capture_default_str();
    app.add_flag("--no-store", s.no_store, "Do not persist results");

    auto* frob = app.add_subcommand("frobenius", "Print the Frobenius strata a0..a4");
    frob->add_option("case", s.target, "Built-in case id or operator file")->required();
    frob->add_option("--order", s.order, "Highest coefficient index")->capture_default_str();

    auto* inv = app.add_subcommand("invariants", "Print e, h, f");
    inv->add_option("case", s.target, "Built-in case id or operator file")->required();
    inv->add_option("--digits", s.digits, "Working precision")->capture_default_str();
    inv->add_option("--order", s.order, "Base series order")->capture_default_str();
    inv->add_flag("--singular", s.singular, "Always use the singular-point route");

    auto* hunt = app.add_subcommand("hunt", "Search a k grid for rational j");
    hunt->add_option("case", s.target, "Built-in case id or operator file")->required();
    hunt->add_option("--k-grid", s.grid, "Grid i/den:from..to")->capture_default_str();
    hunt->add_option("--sign", s.sign, "Sign of z: +, - or both")
        ->check(CLI::IsMember({"+", "-", "both"}))
        ->capture_default_str();
    hunt->add_option("--digits", s.digits, "Working precision")->capture_default_str();
    hunt->add_option("--order", s.order, "Base series order")->capture_default_str();
    hunt->add_option("--workers", s.workers, "Worker threads (0: CYSERIES_WORKERS or all cores)");
    hunt->add_flag("--keep-unrecognized", s.keep_unrecognized, "Also report roots with unrecognized j");

    auto* ver = app.add_subcommand("verify", "Verify formula records");
    ver->add_option("file", s.file, "Formula record file")->required();
    ver->add_option("--digits", s.digits, "Target digits")->capture_default_str();
    ver->add_option("--id", s.id, "Only this record");
    ver->add_option("--max-terms", s.max_terms, "Cap on summed terms")->capture_default_str();

    auto* cong = app.add_subcommand("congruence", "Check supercongruences");
    cong->add_option("file", s.file, "Congruence record file")->required();
    cong->add_option("--primes", s.primes, "Prime range lo..hi")->capture_default_str();
    cong->add_option("--mod-exp", s.mod_exp, "Override the modulus exponent");
    cong->add_option("--id", s.id, "Only this record");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (frob->parsed()) return cmd_frobenius(s, out);
        if (inv->parsed()) return cmd_invariants(s, out);
        if (hunt->parsed()) return cmd_hunt(s, out);
        if (ver->parsed()) return cmd_verify(s, out);
        if (cong->parsed()) return cmd_congruence(s, out);
    } catch (const RecognitionError& e) {
        err << "recognition failure: " << e.what() << "\n";
        return kRecognition;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace cys::cli
