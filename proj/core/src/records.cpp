#include "cyseries/records.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cys {

using nlohmann::ordered_json;
using Json = ordered_json;

namespace {

Json rational_json(const Rational& r) {
    return Json{{"num", to_string(r.num())}, {"den", to_string(r.den())}};
}

Json exact_json(const QuadExt& q) {
    if (q.is_rational()) return rational_json(q.rat());
    return Json{{"rat", rational_json(q.rat())}, {"coef", rational_json(q.coef())}, {"disc", to_string(q.disc())}};
}

Json real_json(const Real& r) { return r.str(kPersistedRealDigits); }

[[noreturn]] void bad(const std::string& what) { throw ParseError(what, 1, 1); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Integer integer_of(const Json& v) {
    if (v.is_string()) {
        try {
            return parse_integer(v.get<std::string>());
        } catch (const Error& e) {
            bad(e.what());
        }
    }
    if (v.is_number_integer()) return Integer(v.get<long>());
    bad("expected an integer string");
}

Rational rational_of(const Json& v) {
    if (!v.is_object() || !v.contains("num") || !v.contains("den")) bad("expected {\"num\", \"den\"}");
    const Integer den = integer_of(v.at("den"));
    if (den == 0) bad("zero denominator");
    return Rational(integer_of(v.at("num")), den);
}

QuadExt exact_of(const Json& v) {
    if (v.is_object() && v.contains("disc")) {
        return QuadExt(rational_of(field(v, "rat")), rational_of(field(v, "coef")), integer_of(v.at("disc")));
    }
    return rational_of(v);
}

Rational rational_field(const Json& j, const char* key) {
    const QuadExt q = exact_of(field(j, key));
    if (!q.is_rational()) bad(std::string("field '") + key + "' must be rational");
    return q.rat();
}

long long_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v.get<long>();
}

Real real_of(const Json& v) {
    if (!v.is_string()) bad("expected a decimal string");
    try {
        return Real::parse(v.get<std::string>(), kPersistedRealDigits);
    } catch (const Error& e) {
        bad(e.what());
    }
}

Json parse_object(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(e.what());
    }
    if (!j.is_object()) bad("expected a JSON object");
    return j;
}

void expect_kind(const Json& j, const char* kind) {
    if (string_field(j, "kind") != kind) bad(std::string("expected a record of kind '") + kind + "'");
}

}  // namespace

std::string formula_to_json(const FormulaRecord& f) {
    Json j{{"kind", "formula"},
           {"id", f.id},
           {"seq", f.seq},
           {"z", exact_json(f.z)},
           {"a", exact_json(f.a)},
           {"b", exact_json(f.b)},
           {"c", exact_json(f.c)},
           {"rhs", exact_json(f.rhs)},
           {"provenance", to_string(f.provenance)},
           {"status", to_string(f.status)},
           {"note", f.note}};
    if (f.verified_digits) j["verified_digits"] = *f.verified_digits;
    return j.dump();
}

FormulaRecord formula_from_json(const std::string& text) {
    const Json j = parse_object(text);
    expect_kind(j, "formula");
    FormulaRecord f;
    f.id = string_field(j, "id");
    f.seq = string_field(j, "seq");
    f.z = exact_of(field(j, "z"));
    f.a = exact_of(field(j, "a"));
    f.b = exact_of(field(j, "b"));
    f.c = exact_of(field(j, "c"));
    f.rhs = exact_of(field(j, "rhs"));
    try {
        if (j.contains("provenance")) f.provenance = provenance_from_string(string_field(j, "provenance"));
        if (j.contains("status")) f.status = status_from_string(string_field(j, "status"));
    } catch (const PreconditionError& e) {
        bad(e.what());
    }
    if (j.contains("note")) f.note = string_field(j, "note");
    if (j.contains("verified_digits")) f.verified_digits = static_cast<int>(long_field(j, "verified_digits"));
    return f;
}

std::string congruence_to_json(const CongruenceSpec& c) {
    Json excluded = Json::array();
    for (long p : c.excluded) excluded.push_back(p);
    const Json j{{"kind", "congruence"},
                 {"id", c.id},
                 {"seq", c.seq},
                 {"z", rational_json(c.z)},
                 {"a", rational_json(c.a)},
                 {"b", rational_json(c.b)},
                 {"c", rational_json(c.c)},
                 {"mod_exp", c.mod_exp},
                 {"expected", rational_json(c.expected)},
                 {"legendre_disc", c.legendre_disc},
                 {"min_prime", c.min_prime},
                 {"excluded", excluded}};
    return j.dump();
}

CongruenceSpec congruence_from_json(const std::string& text) {
    const Json j = parse_object(text);
    expect_kind(j, "congruence");
    CongruenceSpec c;
    c.id = string_field(j, "id");
    c.seq = string_field(j, "seq");
    c.z = rational_field(j, "z");
    c.a = rational_field(j, "a");
    c.b = rational_field(j, "b");
    c.c = rational_field(j, "c");
    c.mod_exp = long_field(j, "mod_exp");
    c.expected = rational_field(j, "expected");
    if (j.contains("legendre_disc")) c.legendre_disc = long_field(j, "legendre_disc");
    if (j.contains("min_prime")) c.min_prime = long_field(j, "min_prime");
    if (j.contains("excluded")) {
        const Json& ex = j.at("excluded");
        if (!ex.is_array()) bad("field 'excluded' must be an array");
        for (const Json& p : ex) {
            if (!p.is_number_integer()) bad("excluded primes must be integers");
            c.excluded.push_back(p.get<long>());
        }
    }
    return c;
}

std::string candidate_to_json(const HuntCandidate& h) {
    Json j{{"kind", "hunt"},
           {"case", h.case_id},
           {"k", rational_json(h.k)},
           {"u", h.u},
           {"t", real_json(h.t)},
           {"q", real_json(h.q)},
           {"j_value", real_json(h.j_value)},
           {"z_value", real_json(h.z_value)}};
    if (h.j) j["j"] = rational_json(*h.j);
    if (h.z) j["z"] = exact_json(*h.z);
    if (h.tau2) j["tau2"] = rational_json(*h.tau2);
    if (h.abc) {
        j["a"] = exact_json(h.abc->a);
        j["b"] = exact_json(h.abc->b);
        j["c"] = exact_json(h.abc->c);
    }
    j["verified_digits"] = h.verified_digits;
    j["status"] = to_string(h.status);
    j["note"] = h.note;
    return j.dump();
}

HuntCandidate candidate_from_json(const std::string& text) {
    const Json j = parse_object(text);
    expect_kind(j, "hunt");
    HuntCandidate h;
    h.case_id = string_field(j, "case");
    h.k = rational_field(j, "k");
    h.u = static_cast<int>(long_field(j, "u"));
    h.t = real_of(field(j, "t"));
    h.q = real_of(field(j, "q"));
    h.j_value = real_of(field(j, "j_value"));
    h.z_value = real_of(field(j, "z_value"));
    if (j.contains("j")) h.j = rational_field(j, "j");
    if (j.contains("z")) h.z = exact_of(j.at("z"));
    if (j.contains("tau2")) h.tau2 = rational_field(j, "tau2");
    if (j.contains("a")) h.abc = Coefficients{exact_of(j.at("a")), exact_of(field(j, "b")), exact_of(field(j, "c"))};
    h.verified_digits = static_cast<int>(long_field(j, "verified_digits"));
    try {
        h.status = hunt_status_from_string(string_field(j, "status"));
    } catch (const PreconditionError& e) {
        bad(e.what());
    }
    if (j.contains("note")) h.note = string_field(j, "note");
    return h;
}

std::string verify_report_to_json(const FormulaRecord& f, int digits, const VerifyResult& r) {
    const Json j{{"kind", "verify-report"},
                 {"id", f.id},
                 {"digits", digits},
                 {"verified_digits", r.verified_digits},
                 {"terms", r.terms},
                 {"method", r.method},
                 {"converged", r.converged},
                 {"lhs", real_json(r.lhs)},
                 {"rhs", real_json(r.rhs)},
                 {"tail_bound", real_json(r.tail_bound)}};
    return j.dump();
}

std::string congruence_report_to_json(const CongruenceSpec& c, const CongruenceResult& r) {
    const Json j{{"kind", "congruence-report"},
                 {"id", c.id},
                 {"p", r.p},
                 {"mod_exp", c.mod_exp},
                 {"applicable", r.applicable},
                 {"holds", r.holds},
                 {"holds_to", r.holds_to},
                 {"lhs_residue", to_string(r.lhs_residue)},
                 {"rhs_residue", to_string(r.rhs_residue)},
                 {"note", r.note}};
    return j.dump();
}

std::vector<std::string> read_record_objects(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open record file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<std::string> out;
    auto take = [&](const Json& j) {
        if (!j.is_object()) bad("record files hold JSON objects");
        out.push_back(j.dump());
    };
    try {
        const Json whole = Json::parse(text);
        if (whole.is_array()) {
            for (const Json& j : whole) take(j);
        } else {
            take(whole);
        }
        return out;
    } catch (const Json::parse_error&) {
        // fall through: one object per line
    }
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            take(Json::parse(line));
        } catch (const Json::parse_error& e) {
            throw ParseError(e.what(), lineno, 1);
        }
    }
    return out;
}

std::string record_kind(const std::string& text) { return string_field(parse_object(text), "kind"); }

std::vector<FormulaRecord> load_formulas(const std::filesystem::path& path) {
    std::vector<FormulaRecord> out;
    for (const auto& obj : read_record_objects(path)) {
        if (record_kind(obj) == "formula") out.push_back(formula_from_json(obj));
    }
    return out;
}

std::vector<CongruenceSpec> load_congruences(const std::filesystem::path& path) {
    std::vector<CongruenceSpec> out;
    for (const auto& obj : read_record_objects(path)) {
        if (record_kind(obj) == "congruence") out.push_back(congruence_from_json(obj));
    }
    return out;
}

ResultStore::ResultStore(std::filesystem::path path) : path_(std::move(path)) {}

void ResultStore::append(const std::string& json) {
    if (json.find('\n') != std::string::npos) throw PreconditionError("store records must be single-line JSON");
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::app);
    if (!out) throw PreconditionError("cannot open result store '" + path_.string() + "'");
    out << json << '\n';
}

std::vector<std::string> ResultStore::lines() const {
    std::vector<std::string> out;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace cys
