#pragma once

// Numeric verification of series for 1/pi^2, the (t0 + pi)^3 relation,
// transformation identities and supercongruences.

#include <optional>
#include <string>
#include <vector>

#include "cyseries/mirror.hpp"
#include "cyseries/numkernel.hpp"
#include "cyseries/seqlang.hpp"

namespace cys {

enum class Provenance { paper_table, hunt, user };
enum class Status { confirmed, unverified, failed };

std::string to_string(Provenance p);
std::string to_string(Status s);
Provenance provenance_from_string(const std::string& s);
Status status_from_string(const std::string& s);

/// sum_n A_n (a + b n + c n^2) z^n = rhs / pi^2
struct FormulaRecord {
    std::string id;
    std::string seq;
    QuadExt z;
    QuadExt a;
    QuadExt b;
    QuadExt c;
    QuadExt rhs{1};
    Provenance provenance = Provenance::user;
    Status status = Status::unverified;
    std::string note;
    std::optional<int> verified_digits;
};

struct VerifyOptions {
    /// Hard cap on the number of terms summed.
    int max_terms = 4000;
};

struct VerifyResult {
    int verified_digits = 0;
    int terms = 0;
    std::string method;  // "ratio", "window", "crvz", "exact" or "partial"
    Real lhs;
    Real rhs;
    Real tail_bound;
    bool converged = false;  // the tail bound reached the target
};

/// Sums the series with a geometric tail bound (ratio test on the last 10
/// terms, r < 0.9), falling back to a window-maximum bound for oscillating
/// terms and to alternating-series acceleration for slowly converging
/// alternating series. Throws NumericError for series whose terms grow.
VerifyResult verify_formula(const FormulaRecord& f, int digits, const VerifyOptions& opt = {});

/// Cohen-Rodriguez Villegas-Zagier acceleration of sum_k (-1)^k a_k using a_0..a_{n-1}.
Real alternating_sum(const std::vector<Real>& a);

struct RemarkableResult {
    Real residual;
    Real q0;
    Real t0;
};

/// (t0 + pi)^3/6 - (5/6) pi^2 (t0 + pi) - pi^3/3 - zeta_coef*zeta(3) - T(q0)
/// with q0 = q(u * 2^-10) found by inverting z(q).
RemarkableResult check_remarkable_relation(const MirrorLadder& case3, int digits, long zeta_coef = 10, int u = -1);

struct TransformationResult {
    Real lhs;
    Real rhs_printed;    // (1 - 4z)^(-1/2) sum A_n (z/(1+4z))^n
    Real rhs_corrected;  // (1 + 4z)^(-1/2) sum A_n (z/(1+4z))^n
    Real residual_printed;
    Real residual_corrected;
    bool in_radius = true;
    bool sign_slip_flagged = false;
    /// Exact power-series comparison of both sides through this order.
    int exact_order = 0;
    bool exact_corrected_matches = false;
    bool exact_printed_matches = false;
};

/// sum binom(2n,n)^4 binom(4n,2n) z^n against the #77 sequence side at z.
TransformationResult check_transformation_77(const Rational& z, int digits, int exact_order = 30);

struct CongruenceSpec {
    std::string id;
    std::string seq;
    Rational z;
    Rational a;
    Rational b;
    Rational c;
    long mod_exp = 3;
    Rational expected;     // right side is expected * (disc|p) * p^2
    long legendre_disc = 1;  // 1 means no symbol
    long min_prime = 5;
    std::vector<long> excluded;
};

/// Odd prime p: the Legendre symbol (d|p) by Euler's criterion.
int legendre(const Integer& d, long p);

struct CongruenceResult {
    long p = 0;
    bool applicable = true;  // false when p is excluded or below min_prime
    bool holds = false;
    Integer lhs_residue;
    Integer rhs_residue;
    /// Largest e <= mod_exp + 2 for which the congruence holds mod p^e.
    long holds_to = 0;
    std::string note;
};

CongruenceResult check_supercongruence(const CongruenceSpec& spec, long p);
/// Same check for an explicit exponent (for probing stronger congruences).
bool congruence_holds_mod(const CongruenceSpec& spec, long p, long exponent);

bool is_prime(long p);

}  // namespace cys
