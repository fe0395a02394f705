#pragma once

// Integer relations and constant recognition.

#include <optional>
#include <vector>

#include "cyseries/numkernel.hpp"

namespace cys {

struct PslqOptions {
    /// Relation accepted when |sum m_i v_i| < 10^-(digits - slack) * max|v_i|.
    int slack = 15;
    /// Iteration cap as a multiple of the digit count.
    int steps_per_digit = 10;
};

/// PSLQ with gamma = sqrt(4/3). `digits` is the number of trustworthy digits in
/// the inputs (the entries themselves may carry more). Returns a nonzero integer
/// vector with max|m_i| <= max_coeff, first nonzero entry positive, or nothing.
std::optional<std::vector<Integer>> pslq(const std::vector<Real>& v, const Integer& max_coeff, int digits,
                                         const PslqOptions& opt = {});

/// |sum m_i v_i| evaluated in the precision of v.
Real relation_residual(const std::vector<Real>& v, const std::vector<Integer>& m);

/// Continued-fraction convergent p/q with q <= max_denom and
/// |x - p/q| < tol (default 10^-(digits(x) - 10)).
std::optional<Rational> rationalize(const Real& x, const Integer& max_denom,
                                    const std::optional<Real>& tol = std::nullopt);

/// (p + q sqrt d)/r for some d in discs via PSLQ on [1, sqrt d, x]; tries the
/// rational case first. `height` bounds the relation coefficients.
std::optional<QuadExt> identify_quadratic(const Real& x, const std::vector<long>& discs, const Integer& height,
                                          std::optional<int> digits = std::nullopt);

}  // namespace cys
