#pragma once

// Wronskian quotients, mirror map, potential T(q), Yukawa coupling and
// instanton numbers of a fifth-order MUM operator, plus numeric evaluation
// of T near a chosen q.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cyseries/cyode.hpp"
#include "cyseries/series.hpp"

namespace cys {

struct HFunctions {
    RationalSeries H0;
    RationalSeries H1;
    RationalSeries H2;
};

struct MirrorData {
    int order = 0;
    HFunctions H;
    RationalSeries q_of_z;
    RationalSeries z_of_q;
    RationalSeries T_z;  // T in the z chart
    RationalSeries T_q;
    RationalSeries K_q;
};

/// b_0 = theta a_0, b_k = a_{k-1} + theta a_k.
std::vector<RationalSeries> b_series(const FrobeniusBasis& F);

/// H_i = (a_0 b_{4-i} - a_{4-i} b_0) / (a_0 b_1 - a_1 b_0). Needs five strata.
HFunctions h_functions(const FrobeniusBasis& F);

struct MirrorMap {
    RationalSeries q_of_z;
    RationalSeries z_of_q;
};

/// q(z) = z exp(H_2) and its compositional inverse.
MirrorMap mirror_map(const FrobeniusBasis& F);

/// T as a series in q: (H_2^3/6 - H_0) composed with z(q).
RationalSeries potential_T(const FrobeniusBasis& F);

/// K = 1 - theta_q^3 T.
RationalSeries yukawa(const RationalSeries& T_q);

/// Lambert-series coefficients n_1..n_{d_max} of K = 1 + sum n_d d^3 q^d/(1-q^d).
std::vector<Rational> instanton_numbers(const RationalSeries& K_q, int d_max);

/// Smallest N0 <= limit with N0 * n_d integral for all listed n_d.
std::optional<Integer> instanton_denominator(const std::vector<Rational>& n, const Integer& limit);

MirrorData build_mirror(const FrobeniusBasis& F);
MirrorData build_mirror(const ThetaOperator& op, int order);

/// Ratio-test estimate of the radius of convergence of a series (from its
/// last nonzero coefficients). Infinite-looking series give a large value.
Real radius_estimate(const RationalSeries& f, int digits);

/// Values of T, theta_q T and theta_q^2 T at one point, with the largest
/// geometric tail estimate among the three.
struct TValues {
    Real T;
    Real thetaT;
    Real theta2T;
    Real tail;
};

TValues evaluate_T(const MirrorData& M, const Real& q);

struct SingularPoint {
    Real q0;
    Real t0;  // log|q0|
    Real z0;
};

/// Root of dz/dq on the sign-u half line inside the radius of z(q).
SingularPoint singular_point(const MirrorData& M, int digits, int u);

/// Lazily built MirrorData for one operator at a ladder of truncation orders
/// (base, 2 base, 4 base, ... up to max). Safe for concurrent use.
class MirrorLadder {
public:
    MirrorLadder(ThetaOperator op, int base_order, int max_order);

    const ThetaOperator& op() const noexcept { return op_; }
    int base_order() const noexcept { return base_; }
    int max_order() const noexcept { return max_; }
    std::vector<int> orders() const;
    std::shared_ptr<const MirrorData> at(int order) const;
    std::shared_ptr<const MirrorData> base() const { return at(base_); }

    /// Evaluates T at q, raising the order until tail < 10^-(digits+5) or the
    /// ladder is exhausted; returns the last attempt.
    TValues evaluate_T(const Real& q, int digits) const;

    /// singular_point at increasing orders until successive answers agree.
    SingularPoint singular_point(int digits, int u) const;

private:
    ThetaOperator op_;
    int base_;
    int max_;
    mutable std::mutex mu_;
    mutable std::map<int, std::shared_ptr<const MirrorData>> cache_;
};

}  // namespace cys
