#include "cyseries/seqlang.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

namespace cys {

using Node = SeqExpr::Node;
using Kind = SeqExpr::Kind;
using NodePtr = std::shared_ptr<const Node>;

// ---- parser -----------------------------------------------------------------

namespace {

NodePtr make(Kind k, std::vector<NodePtr> kids = {}, std::string name = {}, Integer value = 0) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->kids = std::move(kids);
    n->name = std::move(name);
    n->value = std::move(value);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what, line, col);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool peek_ident() {
        skip_ws();
        return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
    }
    std::string ident() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected identifier");
        return std::string(s_.substr(start, pos_ - start));
    }
    bool peek_digit() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    Integer integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    NodePtr expr() {
        NodePtr l = term();
        for (;;) {
            if (accept('+')) {
                l = make(Kind::add, {l, term()});
            } else if (accept('-')) {
                l = make(Kind::sub, {l, term()});
            } else {
                return l;
            }
        }
    }
    NodePtr term() {
        NodePtr l = factor();
        for (;;) {
            if (accept('*')) {
                l = make(Kind::mul, {l, factor()});
            } else if (accept('/')) {
                l = make(Kind::div, {l, factor()});
            } else {
                return l;
            }
        }
    }
    NodePtr factor() {
        if (accept('-')) return make(Kind::neg, {factor()});
        NodePtr base = atom();
        if (accept('^')) {
            NodePtr ex;
            if (peek_digit()) {
                ex = make(Kind::integer, {}, {}, integer());
            } else if (peek_ident()) {
                ex = variable(ident());
            } else if (accept('(')) {
                ex = expr();
                expect(')');
            } else {
                fail("expected exponent after '^'");
            }
            return make(Kind::pow, {base, ex});
        }
        return base;
    }
    NodePtr variable(const std::string& name) {
        if (name != "n") {
            bool bound = false;
            for (const auto& b : scope_) bound = bound || b == name;
            if (!bound) fail("unbound variable '" + name + "'");
        }
        return make(Kind::variable, {}, name);
    }
    std::vector<NodePtr> args(std::size_t count, const std::string& fn) {
        std::vector<NodePtr> out;
        for (std::size_t i = 0; i < count; ++i) {
            if (i > 0 && !accept(',')) fail(fn + " expects " + std::to_string(count) + " arguments");
            out.push_back(expr());
        }
        if (!accept(')')) fail(fn + " expects " + std::to_string(count) + " arguments");
        return out;
    }
    NodePtr atom() {
        if (peek_digit()) return make(Kind::integer, {}, {}, integer());
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (!peek_ident()) fail(pos_ < s_.size() ? "unexpected character '" + std::string(1, s_[pos_]) + "'"
                                                  : "unexpected end of input");
        const std::size_t at = pos_;
        const std::string name = ident();
        if (!accept('(')) return variable(name);
        if (name == "binom") return make(Kind::binom, args(2, name));
        if (name == "fact" || name == "factorial") return make(Kind::fact, args(1, name));
        if (name == "pow") return make(Kind::pow, args(2, name));
        if (name == "sum") {
            const std::string var = ident();
            if (var == "n") fail("sum may not rebind n");
            expect(',');
            NodePtr lo = expr();
            expect(',');
            NodePtr hi = expr();
            expect(',');
            scope_.push_back(var);
            NodePtr body = expr();
            scope_.pop_back();
            expect(')');
            return make(Kind::sum, {lo, hi, body}, var);
        }
        pos_ = at;
        fail("unknown function '" + name + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::vector<std::string> scope_;
};

// ---- printer ----------------------------------------------------------------

int precedence(const Node& n) {
    switch (n.kind) {
        case Kind::add:
        case Kind::sub: return 1;
        case Kind::mul:
        case Kind::div: return 2;
        case Kind::neg: return 3;
        case Kind::pow: return 4;
        default: return 5;
    }
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(n, out);
    if (wrap) out += ')';
}

void print(const Node& n, std::string& out) {
    const int p = precedence(n);
    switch (n.kind) {
        case Kind::integer: out += n.value.get_str(); return;
        case Kind::variable: out += n.name; return;
        case Kind::add:
        case Kind::sub:
        case Kind::mul:
        case Kind::div: {
            static const std::map<Kind, const char*> ops = {
                {Kind::add, " + "}, {Kind::sub, " - "}, {Kind::mul, "*"}, {Kind::div, "/"}};
            print_wrapped(*n.kids[0], precedence(*n.kids[0]) < p, out);
            out += ops.at(n.kind);
            print_wrapped(*n.kids[1], precedence(*n.kids[1]) <= p, out);
            return;
        }
        case Kind::neg:
            out += '-';
            print_wrapped(*n.kids[0], precedence(*n.kids[0]) < p, out);
            return;
        case Kind::pow: {
            print_wrapped(*n.kids[0], precedence(*n.kids[0]) < 5, out);
            out += '^';
            const Node& e = *n.kids[1];
            print_wrapped(e, e.kind != Kind::integer && e.kind != Kind::variable, out);
            return;
        }
        case Kind::binom:
            out += "binom(";
            print(*n.kids[0], out);
            out += ", ";
            print(*n.kids[1], out);
            out += ')';
            return;
        case Kind::fact:
            out += "fact(";
            print(*n.kids[0], out);
            out += ')';
            return;
        case Kind::sum:
            out += "sum(" + n.name + ", ";
            print(*n.kids[0], out);
            out += ", ";
            print(*n.kids[1], out);
            out += ", ";
            print(*n.kids[2], out);
            out += ')';
            return;
    }
}

bool same(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
        if (!same(*a.kids[i], *b.kids[i])) return false;
    }
    return true;
}

// ---- exact evaluation ---------------------------------------------------------

using Env = std::vector<std::pair<std::string, long>>;

long lookup(const Env& env, const std::string& name) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == name) return it->second;
    }
    throw PreconditionError("unbound variable '" + name + "'");
}

long as_index(const Rational& x, const char* what) {
    if (!x.is_integer()) throw PreconditionError(std::string(what) + " argument is not an integer");
    const Integer v = x.num();
    if (!v.fits_slong_p()) throw PreconditionError(std::string(what) + " argument out of range");
    return v.get_si();
}

Rational eval_exact(const Node& n, Env& env) {
    switch (n.kind) {
        case Kind::integer: return Rational(n.value);
        case Kind::variable: return Rational(lookup(env, n.name));
        case Kind::add: return eval_exact(*n.kids[0], env) + eval_exact(*n.kids[1], env);
        case Kind::sub: return eval_exact(*n.kids[0], env) - eval_exact(*n.kids[1], env);
        case Kind::mul: {
            Rational l = eval_exact(*n.kids[0], env);
            if (l.is_zero()) return l;
            return l * eval_exact(*n.kids[1], env);
        }
        case Kind::div: {
            Rational d = eval_exact(*n.kids[1], env);
            if (d.is_zero()) throw PreconditionError("division by zero in sequence expression");
            return eval_exact(*n.kids[0], env) / d;
        }
        case Kind::neg: return -eval_exact(*n.kids[0], env);
        case Kind::pow: {
            const Rational base = eval_exact(*n.kids[0], env);
            const long e = as_index(eval_exact(*n.kids[1], env), "exponent");
            if (e < 0 && base.is_zero()) throw PreconditionError("zero to a negative power");
            return base.pow(e);
        }
        case Kind::binom: {
            const long a = as_index(eval_exact(*n.kids[0], env), "binom");
            const long b = as_index(eval_exact(*n.kids[1], env), "binom");
            if (a < 0 || b < 0) throw PreconditionError("negative binomial argument");
            if (b > a) return Rational(0);
            Integer r;
            mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
            return Rational(r);
        }
        case Kind::fact: {
            const long a = as_index(eval_exact(*n.kids[0], env), "factorial");
            if (a < 0) throw PreconditionError("negative factorial argument");
            Integer r;
            mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(a));
            return Rational(r);
        }
        case Kind::sum: {
            const long lo = as_index(eval_exact(*n.kids[0], env), "sum bound");
            const long hi = as_index(eval_exact(*n.kids[1], env), "sum bound");
            Rational acc(0);
            env.emplace_back(n.name, 0);
            for (long i = lo; i <= hi; ++i) {
                env.back().second = i;
                acc += eval_exact(*n.kids[2], env);
            }
            env.pop_back();
            return acc;
        }
    }
    throw PreconditionError("corrupt expression tree");
}

// ---- p-adic evaluation --------------------------------------------------------

constexpr long kExact = 1L << 40;

// value = p^v * u with u a unit known mod p^(abs - v); `zero` means value == 0 mod p^abs.
struct PAdic {
    bool zero = false;
    long v = 0;
    Integer u;
    long abs = kExact;
};

// Thrown internally when the p-adic route cannot proceed (falls back to exact).
struct PadicFallback {};

std::mutex g_fact_mu;
std::map<std::pair<std::string, long>, std::vector<Integer>> g_fact_units;

class PadicEval {
public:
    PadicEval(const Integer& p, long work) : p_(p), w_(work) {}

    Integer power(long k) const {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(k));
        return r;
    }

    PAdic from_rational(const Rational& x) const {
        if (x.is_zero()) return {true, 0, 0, kExact};
        Integer num = x.num(), den = x.den();
        long v = 0;
        while (num % p_ == 0) {
            num /= p_;
            ++v;
        }
        while (den % p_ == 0) {
            den /= p_;
            --v;
        }
        const Integer mod = power(w_);
        Integer u = num * mod_inverse(den, mod) % mod;
        if (u < 0) u += mod;
        return {false, v, u, v + w_};
    }

    PAdic mul(const PAdic& a, const PAdic& b) const {
        if (a.zero || b.zero) {
            long abs;
            if (a.zero && b.zero) {
                abs = std::min(kExact, a.abs + b.abs);
            } else if (a.zero) {
                abs = std::min(kExact, a.abs + b.v);
            } else {
                abs = std::min(kExact, b.abs + a.v);
            }
            return {true, 0, 0, abs};
        }
        PAdic r;
        r.v = a.v + b.v;
        r.abs = std::min(a.abs + b.v, b.abs + a.v);
        r.u = a.u * b.u % power(r.abs - r.v);
        return r;
    }

    PAdic inverse(const PAdic& a) const {
        if (a.zero) throw PadicFallback{};
        const long rel = a.abs - a.v;
        const Integer mod = power(rel);
        return {false, -a.v, mod_inverse(a.u, mod), -a.v + rel};
    }

    PAdic add(const PAdic& a, const PAdic& b) const {
        const long abs = std::min(a.abs, b.abs);
        const long va = a.zero ? abs : a.v;
        const long vb = b.zero ? abs : b.v;
        const long v = std::min(va, vb);
        if (v >= abs) return {true, 0, 0, abs};
        const Integer mod = power(abs - v);
        Integer s = 0;
        if (!a.zero) s += a.u * power(va - v);
        if (!b.zero) s += b.u * power(vb - v);
        s %= mod;
        if (s < 0) s += mod;
        long vv = v;
        while (s != 0 && s % p_ == 0) {
            s /= p_;
            ++vv;
        }
        if (s == 0) return {true, 0, 0, abs};
        return {false, vv, s % power(abs - vv), abs};
    }

    PAdic neg(PAdic a) const {
        if (!a.zero) {
            const Integer mod = power(a.abs - a.v);
            a.u = (mod - a.u) % mod;
        }
        return a;
    }

    PAdic factorial(long k) const {
        long v = 0;
        for (Integer q = p_; q <= k; q *= p_) v += static_cast<long>(Integer(k / q).get_si());
        return {false, v, unit_factorial(k), v + w_};
    }

    PAdic eval(const Node& n, Env& env) const {
        switch (n.kind) {
            case Kind::integer:
            case Kind::variable: return from_rational(eval_exact(n, env));
            case Kind::add: return add(eval(*n.kids[0], env), eval(*n.kids[1], env));
            case Kind::sub: return add(eval(*n.kids[0], env), neg(eval(*n.kids[1], env)));
            case Kind::mul: return mul(eval(*n.kids[0], env), eval(*n.kids[1], env));
            case Kind::div: return mul(eval(*n.kids[0], env), inverse(eval(*n.kids[1], env)));
            case Kind::neg: return neg(eval(*n.kids[0], env));
            case Kind::pow: {
                const long e = as_index(eval_exact(*n.kids[1], env), "exponent");
                PAdic base = eval(*n.kids[0], env);
                if (e < 0) base = inverse(base);
                PAdic r = from_rational(Rational(1));
                for (long k = e < 0 ? -e : e; k > 0; k >>= 1) {
                    if (k & 1) r = mul(r, base);
                    if (k > 1) base = mul(base, base);
                }
                return r;
            }
            case Kind::binom: {
                const long a = as_index(eval_exact(*n.kids[0], env), "binom");
                const long b = as_index(eval_exact(*n.kids[1], env), "binom");
                if (a < 0 || b < 0) throw PreconditionError("negative binomial argument");
                if (b > a) return {true, 0, 0, kExact};
                return mul(factorial(a), inverse(mul(factorial(b), factorial(a - b))));
            }
            case Kind::fact: {
                const long a = as_index(eval_exact(*n.kids[0], env), "factorial");
                if (a < 0) throw PreconditionError("negative factorial argument");
                return factorial(a);
            }
            case Kind::sum: {
                const long lo = as_index(eval_exact(*n.kids[0], env), "sum bound");
                const long hi = as_index(eval_exact(*n.kids[1], env), "sum bound");
                PAdic acc{true, 0, 0, kExact};
                env.emplace_back(n.name, 0);
                for (long i = lo; i <= hi; ++i) {
                    env.back().second = i;
                    acc = add(acc, eval(*n.kids[2], env));
                }
                env.pop_back();
                return acc;
            }
        }
        throw PreconditionError("corrupt expression tree");
    }

private:
    // prod_{j <= k} (j with all factors p removed) mod p^w, from a shared table.
    Integer unit_factorial(long k) const {
        std::lock_guard<std::mutex> lock(g_fact_mu);
        auto& table = g_fact_units[{p_.get_str(), w_}];
        if (table.empty()) table.emplace_back(1);
        const Integer mod = power(w_);
        while (static_cast<long>(table.size()) <= k) {
            Integer j = static_cast<long>(table.size());
            while (j % p_ == 0) j /= p_;
            table.push_back(table.back() * j % mod);
        }
        return table[static_cast<std::size_t>(k)];
    }

    Integer p_;
    long w_;
};

std::vector<std::pair<Integer, long>> factor_modulus(Integer m, Integer& rest) {
    std::vector<std::pair<Integer, long>> out;
    for (long p = 2; p <= 1000000 && Integer(p) * p <= m; ++p) {
        if (m % p != 0) continue;
        long e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.emplace_back(Integer(p), e);
    }
    if (m > 1 && m <= Integer(1000000) * 1000000) {
        out.emplace_back(m, 1);  // remaining cofactor is prime
        m = 1;
    }
    rest = m;
    return out;
}

}  // namespace

SeqExpr SeqExpr::parse(std::string_view text) { return SeqExpr(Parser(text).parse_all()); }

std::string SeqExpr::str() const {
    std::string out;
    print(*root_, out);
    return out;
}

bool operator==(const SeqExpr& a, const SeqExpr& b) { return same(*a.root_, *b.root_); }

Rational SeqExpr::eval_rational(long n) const {
    if (n < 0) throw PreconditionError("sequence index must be non-negative");
    Env env{{"n", n}};
    return eval_exact(*root_, env);
}

Integer SeqExpr::eval(long n) const {
    Rational r = eval_rational(n);
    if (!r.is_integer()) throw PreconditionError("sequence value at n = " + std::to_string(n) + " is not an integer");
    return r.num();
}

Integer SeqExpr::eval_mod(long n, const Integer& modulus) const {
    if (modulus < 2) throw PreconditionError("modulus must be at least 2");
    if (n < 0) throw PreconditionError("sequence index must be non-negative");
    Integer rest;
    const auto parts = factor_modulus(modulus, rest);
    std::optional<Integer> exact;
    auto exact_value = [&]() -> const Integer& {
        if (!exact) exact = eval(n);
        return *exact;
    };

    Integer result = 0, combined = 1;
    auto crt = [&](Integer r, const Integer& m) {
        r %= m;
        if (r < 0) r += m;
        // result + combined * t == r (mod m)
        Integer t = (r - result) * mod_inverse(combined % m, m) % m;
        if (t < 0) t += m;
        result += combined * t;
        combined *= m;
    };

    for (const auto& [p, e] : parts) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
        std::optional<Integer> residue;
        try {
            PadicEval pe_eval(p, e + 20);
            Env env{{"n", n}};
            PAdic v = pe_eval.eval(*root_, env);
            if (v.zero && v.abs >= e) {
                residue = Integer(0);
            } else if (!v.zero && v.abs >= e && v.v >= 0) {
                residue = v.v >= e ? Integer(0) : Integer(pe_eval.power(v.v) * v.u % pe);
            }
        } catch (const PadicFallback&) {
        }
        crt(residue ? *residue : exact_value() % pe, pe);
    }
    if (rest > 1) crt(exact_value() % rest, rest);
    return result % modulus;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    Integer aa = a % m;
    if (aa < 0) aa += m;
    if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw PreconditionError("residue " + a.get_str() + " is not invertible modulo " + m.get_str());
    }
    return r;
}

Integer mod_rational(const Rational& x, const Integer& m) {
    Integer r = x.num() * mod_inverse(x.den(), m) % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace cys
