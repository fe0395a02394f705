#pragma once

// Search for series sum A_n (a + b n + c n^2) z^n = 1/pi^2 on a fifth-order
// operator: invariants (e, h, f), the root t of
//
//   t^3/6 - (pi^2/2)(k + e) t - h zeta(3) - T(u e^t) = 0,
//
// the number j, the point z, tau and the coefficients a, b, c.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyseries/mirror.hpp"
#include "cyseries/registry.hpp"
#include "cyseries/verifier.hpp"

namespace cys {

/// Closed forms e = 5/3 + cot^2(pi s1) + cot^2(pi s2), f = 1/(sin^2(pi s1) sin^2(pi s2)),
/// h = [zeta(3,1/2) + sum zeta(3, s_i) + zeta(3, 1 - s_i) - 5 zeta(3)] / (3 zeta(3)),
/// each recognized as a rational.
Invariants invariants_hypergeometric(const CaseSpec& c, int digits = 60);

struct SingularInvariants {
    Invariants inv;
    SingularPoint point;
};

/// e, h from an integer relation on [t0^3/6 - T(q0), pi^2 t0/2, zeta(3)] at the
/// singular point, f from the j = k = 0 condition.
SingularInvariants invariants_from_singularity(const MirrorLadder& ladder, int digits, int u = 1);

/// Entry override, then closed forms, then the singular point.
Invariants resolve_invariants(const CaseEntry& entry, const MirrorLadder& ladder, int digits);

struct Eq6Root {
    Real t;
    Real q;
    TValues T;
};

/// All distinct roots of the search equation with |q| inside the radius of T,
/// most negative t first. Seeds: the negative real roots of the cubic with T
/// dropped, then a sign-change scan over t in [-40, -1].
std::vector<Eq6Root> solve_eq6_all(const Invariants& inv, const Rational& k, int u, const MirrorLadder& ladder,
                                   int digits);
/// The first root of solve_eq6_all, if any.
std::optional<Eq6Root> solve_eq6(const Invariants& inv, const Rational& k, int u, const MirrorLadder& ladder,
                                 int digits);

/// j = 12 {(t^2/2 - theta T - (pi^2/2)(k + e))^2 / pi^4 - k^2/4 - e k - f}.
Real compute_j(const Invariants& inv, const Rational& k, const Eq6Root& root);

/// Nearest p/q with q <= max_den within tol (absolute, scaled by max(1, |j|)).
std::optional<Rational> recognize_j(const Real& j, long max_den = 12, double tol = 1e-10);

/// tau^2 = j/12 + k^2/4 + e k + f.
Rational tau_squared(const Invariants& inv, const Rational& k, const Rational& j);

/// tau = c / sqrt(1 - rho z); throws PreconditionError when 1 - rho z <= 0.
Real compute_tau_hypergeometric(const Real& c, const Rational& rho, const Real& z);
/// c = tau sqrt(1 - rho z).
Real coefficient_from_tau_hypergeometric(const Real& tau, const Rational& rho, const Real& z);
/// tau = c exp(integral e3(z)/(2z) dz) with e3[k-1] the coefficient of z^k.
Real compute_tau_general(const std::vector<Rational>& e3, const Real& z, const Real& c);
Real coefficient_from_tau_general(const std::vector<Rational>& e3, const Real& z, const Real& tau);

/// Radius of convergence of the holomorphic solution: the smallest root modulus
/// of sum_m lead(Q_m) z^m.
double operator_radius(const ThetaOperator& op);

/// S_m = sum A_n n^m z^n for m = 0, 1, 2 at the given precision.
std::vector<Real> moment_sums(const SeqExpr& seq, const Real& z, int digits, int max_terms = 5000);

struct Coefficients {
    QuadExt a;
    QuadExt b;
    QuadExt c;
};

/// Integer relation over [S0, S1, S2, 1/(sqrt(d) pi^2)] for d in `discs` (d = 1
/// first), or over the sqrt(d) doubled basis when z lies in Q(sqrt d).
std::optional<Coefficients> recover_abc(const SeqExpr& seq, const QuadExt& z, int digits,
                                        const std::vector<long>& discs = {});

enum class HuntStatus { confirmed, unverified, divergent_side, singular, unidentified };
std::string to_string(HuntStatus s);
HuntStatus hunt_status_from_string(const std::string& s);

struct HuntCandidate {
    std::string case_id;
    Rational k;
    int u = 1;
    Real t;
    Real q;
    Real j_value;
    std::optional<Rational> j;
    Real z_value;
    std::optional<QuadExt> z;
    std::optional<Rational> tau2;
    std::optional<Coefficients> abc;
    int verified_digits = 0;
    HuntStatus status = HuntStatus::unidentified;
    std::string note;
};

/// Grid k = i/den for i in [from, to].
struct KGrid {
    long den = 3;
    long from = 0;
    long to = 60;
    /// Parses "i/60:0..1200".
    static KGrid parse(const std::string& text);
    std::vector<Rational> values() const;
};

struct HuntOptions {
    int digits = 50;
    /// Workers; 0 reads CYSERIES_WORKERS, falling back to the hardware count.
    int workers = 0;
    long j_max_den = 12;
    double j_tol = 1e-10;
    /// Keep roots whose j is not recognized.
    bool keep_unrecognized = false;
};

struct HuntContext {
    CaseEntry entry;
    std::shared_ptr<const MirrorLadder> ladder;
    Invariants inv;
    double radius = 0;  // of sum A_n z^n
};

/// Builds the ladder (base order, up to 8 base) and resolves the invariants.
HuntContext make_hunt_context(const CaseEntry& entry, int order, int digits);

/// Candidates for one k (one per root with recognized j).
std::vector<HuntCandidate> hunt_k(const HuntContext& ctx, const Rational& k, int u, const HuntOptions& opt);

/// Sweeps k over the grid in parallel; candidates sorted by k then t.
std::vector<HuntCandidate> grid_hunt(const HuntContext& ctx, const std::vector<Rational>& ks, int u,
                                     const HuntOptions& opt);

int worker_count(int requested);

}  // namespace cys
