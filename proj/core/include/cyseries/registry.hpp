#pragma once

// Built-in hypergeometric rows and user-supplied operator files.
//
// Operator file format (one directive per line, '#' starts a comment):
//
//   id Aalpha
//   order 5
//   seq binom(2*n,n)^2*sum(i,0,n,binom(n,i)^2*binom(2*i,i)*binom(2*n-2*i,n-i))
//   Q0 n^5
//   Q1 -8*(2*n+1)^3*(5*n^2+5*n+2)
//   Q2 0 0 1/2 3            # a plain coefficient list, lowest degree first
//   invariants 1 14/3 1/3   # e h f, optional
//   e3 -3 12 ...            # coefficients of z^1, z^2, ... of e3(z), optional
//
// A Qm line holds either a sequence expression in n (n standing for theta) or
// a list of rationals. The operator is sum_m z^m Qm(theta).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyseries/cyode.hpp"
#include "cyseries/seqlang.hpp"

namespace cys {

struct Invariants {
    Rational e;
    Rational h;
    Rational f;
    friend bool operator==(const Invariants&, const Invariants&) = default;
};

struct CaseEntry {
    std::string id;
    ThetaOperator op;
    std::optional<SeqExpr> seq;
    std::optional<CaseSpec> hyper;          // set for the built-in rows
    std::optional<Invariants> invariants;   // user override
    std::vector<Rational> e3;               // e3[k-1] multiplies z^k
};

/// The fourteen hypergeometric rows, ids "t1" .. "t14".
const std::vector<CaseSpec>& builtin_cases();
/// Throws PreconditionError for an unknown id.
const CaseSpec& find_case(std::string_view id);
CaseEntry entry_for(const CaseSpec& c);

/// Interpolates a polynomial of degree <= max_degree from an expression in n.
Polynomial polynomial_from_expression(const SeqExpr& e, int max_degree);

CaseEntry parse_operator_text(std::string_view text);
CaseEntry load_operator_file(const std::filesystem::path& path);
std::string format_operator_text(const CaseEntry& entry);

/// Built-in id, or otherwise a path to an operator file.
CaseEntry resolve_case(const std::string& id_or_path);

}  // namespace cys
