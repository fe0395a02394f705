#include "cyseries/registry.hpp"

#include <fstream>
#include <sstream>

namespace cys {

const std::vector<CaseSpec>& builtin_cases() {
    static const std::vector<CaseSpec> cases = [] {
        auto R = [](long p, long q = 1) { return Rational(Integer(p), Integer(q)); };
        return std::vector<CaseSpec>{
            {"t1", R(1, 5), R(2, 5), R(12500), "binom(2*n,n)^3*binom(3*n,n)*binom(5*n,2*n)"},
            {"t2", R(1, 10), R(3, 10), R(3200000), "binom(2*n,n)^2*binom(3*n,n)*binom(5*n,2*n)*binom(10*n,5*n)"},
            {"t3", R(1, 2), R(1, 2), R(1024), "binom(2*n,n)^5"},
            {"t4", R(1, 3), R(1, 3), R(2916), "binom(2*n,n)^3*binom(3*n,n)^2"},
            {"t5", R(1, 2), R(1, 3), R(1728), "binom(2*n,n)^4*binom(3*n,n)"},
            {"t6", R(1, 2), R(1, 4), R(4096), "binom(2*n,n)^4*binom(4*n,2*n)"},
            {"t7", R(1, 8), R(3, 8), R(262144), "binom(2*n,n)^3*binom(4*n,2*n)*binom(8*n,4*n)"},
            {"t8", R(1, 6), R(1, 3), R(46656), "binom(2*n,n)^3*binom(4*n,2*n)*binom(6*n,2*n)"},
            {"t9", R(1, 12), R(5, 12), R(11943936), "binom(2*n,n)^3*binom(6*n,2*n)*binom(12*n,6*n)"},
            {"t10", R(1, 4), R(1, 4), R(16384), "binom(2*n,n)^3*binom(4*n,2*n)^2"},
            {"t11", R(1, 4), R(1, 3), R(6912), "binom(2*n,n)^3*binom(3*n,n)*binom(4*n,2*n)"},
            {"t12", R(1, 6), R(1, 4), R(110592), "binom(2*n,n)^2*binom(3*n,n)*binom(4*n,2*n)*binom(6*n,3*n)"},
            {"t13", R(1, 6), R(1, 6), R(746496), "binom(2*n,n)*binom(3*n,n)^2*binom(6*n,3*n)^2"},
            {"t14", R(1, 2), R(1, 6), R(27648), "binom(2*n,n)^3*binom(3*n,n)*binom(6*n,3*n)"},
        };
    }();
    return cases;
}

const CaseSpec& find_case(std::string_view id) {
    for (const auto& c : builtin_cases()) {
        if (c.id == id) return c;
    }
    throw PreconditionError("unknown case id '" + std::string(id) + "'");
}

CaseEntry entry_for(const CaseSpec& c) {
    CaseEntry e;
    e.id = c.id;
    e.op = hypergeometric_operator(c);
    e.seq = SeqExpr::parse(c.binomial_form);
    e.hyper = c;
    return e;
}

Polynomial polynomial_from_expression(const SeqExpr& e, int max_degree) {
    // Newton forward differences at n = 0 .. max_degree + 1.
    const int pts = max_degree + 2;
    std::vector<Rational> diff;
    for (int n = 0; n < pts; ++n) diff.push_back(e.eval_rational(n));
    std::vector<Rational> lead;
    for (int k = 0; k < pts; ++k) {
        lead.push_back(diff[0]);
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }
    if (!lead.back().is_zero()) {
        throw PreconditionError("expression '" + e.str() + "' is not a polynomial of degree <= " +
                                std::to_string(max_degree));
    }
    Polynomial result;
    Polynomial falling = Polynomial::constant(Rational(1));  // n (n-1) ... (n-k+1) / k!
    for (int k = 0; k <= max_degree; ++k) {
        result += falling * lead[static_cast<std::size_t>(k)];
        falling = falling * Polynomial::linear(Rational(-k)) * Rational(1, k + 1);
    }
    // Reject expressions that agree on the sample points only by accident.
    for (int n = pts; n < pts + 3; ++n) {
        if (result(Rational(n)) != e.eval_rational(n)) {
            throw PreconditionError("expression '" + e.str() + "' is not a polynomial in n");
        }
    }
    return result;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

std::optional<std::vector<Rational>> as_rationals(const std::vector<std::string>& words) {
    std::vector<Rational> out;
    for (const auto& w : words) {
        try {
            out.push_back(Rational::parse(w));
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return out;
}

}  // namespace

CaseEntry parse_operator_text(std::string_view text) {
    CaseEntry entry;
    std::optional<int> order;
    std::vector<std::pair<int, std::pair<int, std::string>>> qlines;  // m -> (line, body)
    std::istringstream is{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        const auto words = split_ws(line);
        if (words.empty()) continue;
        const std::string& key = words[0];
        const std::string rest = line.substr(line.find(key) + key.size());
        auto bad = [&](const std::string& what) { throw ParseError(what, lineno, 1); };
        if (key == "id") {
            if (words.size() != 2) bad("id takes one word");
            entry.id = words[1];
        } else if (key == "order") {
            if (words.size() != 2) bad("order takes one integer");
            try {
                order = std::stoi(words[1]);
            } catch (const std::exception&) {
                bad("order takes one integer");
            }
        } else if (key == "seq") {
            try {
                entry.seq = SeqExpr::parse(rest);
            } catch (const ParseError& e) {
                throw ParseError(std::string("seq: ") + e.what(), lineno, e.column());
            }
        } else if (key.size() >= 2 && key[0] == 'Q' && key.find_first_not_of("0123456789", 1) == std::string::npos) {
            qlines.push_back({std::stoi(key.substr(1)), {lineno, rest}});
        } else if (key == "invariants") {
            auto v = as_rationals({words.begin() + 1, words.end()});
            if (!v || v->size() != 3) bad("invariants takes three rationals e h f");
            entry.invariants = Invariants{(*v)[0], (*v)[1], (*v)[2]};
        } else if (key == "e3") {
            auto v = as_rationals({words.begin() + 1, words.end()});
            if (!v || v->empty()) bad("e3 takes a list of rationals");
            entry.e3 = *v;
        } else {
            bad("unknown directive '" + key + "'");
        }
    }
    if (entry.id.empty()) throw ParseError("missing id", lineno, 1);
    if (!order) throw ParseError("missing order", lineno, 1);
    std::map<int, Polynomial> terms;
    for (const auto& [m, body] : qlines) {
        const auto& [ln, textq] = body;
        if (terms.count(m)) throw ParseError("Q" + std::to_string(m) + " given twice", ln, 1);
        const auto words = split_ws(textq);
        auto coeffs = as_rationals(words);
        try {
            if (coeffs && !coeffs->empty()) {
                terms[m] = Polynomial(*coeffs);
            } else {
                terms[m] = polynomial_from_expression(SeqExpr::parse(textq), *order);
            }
        } catch (const ParseError& e) {
            throw ParseError("Q" + std::to_string(m) + ": " + e.what(), ln, e.column());
        } catch (const PreconditionError& e) {
            throw ParseError("Q" + std::to_string(m) + ": " + e.what(), ln, 1);
        }
    }
    try {
        entry.op = ThetaOperator(*order, std::move(terms));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what(), lineno, 1);
    }
    return entry;
}

CaseEntry load_operator_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open operator file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_operator_text(ss.str());
}

std::string format_operator_text(const CaseEntry& entry) {
    std::ostringstream os;
    os << "id " << entry.id << "\n";
    os << "order " << entry.op.order() << "\n";
    if (entry.seq) os << "seq " << entry.seq->str() << "\n";
    for (const auto& [m, q] : entry.op.terms()) {
        os << "Q" << m;
        for (int i = 0; i <= q.degree(); ++i) os << " " << q[i].str();
        os << "\n";
    }
    if (entry.invariants) {
        os << "invariants " << entry.invariants->e.str() << " " << entry.invariants->h.str() << " "
           << entry.invariants->f.str() << "\n";
    }
    if (!entry.e3.empty()) {
        os << "e3";
        for (const auto& c : entry.e3) os << " " << c.str();
        os << "\n";
    }
    return os.str();
}

CaseEntry resolve_case(const std::string& id_or_path) {
    for (const auto& c : builtin_cases()) {
        if (c.id == id_or_path) return entry_for(c);
    }
    if (std::filesystem::exists(id_or_path)) return load_operator_file(id_or_path);
    throw PreconditionError("'" + id_or_path + "' is neither a built-in case id nor an operator file");
}

}  // namespace cys
