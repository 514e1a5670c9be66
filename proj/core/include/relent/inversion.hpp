#pragma once

// Inverting the tail bounds: confidence radii, sample-size planning and
// finite-sample goodness-of-fit p-values.

#include <cstdint>

#include "relent/bounds.hpp"
#include "relent/divergence.hpp"

namespace relent {

struct ConfidenceResult {
    double radius = 0.0;
    Side side = Side::Upper;
    double achieved_bound = 1.0;  ///< the inverted bound evaluated at radius, <= delta
    int iterations = 0;
};

/// Smallest eps, to relative tolerance 1e-9, with tail_bound(n, k, eps, side).primary <= delta.
///
/// The returned radius carries a bracketing certificate: the bound at
/// radius * (1 - 1e-6) exceeds delta unless radius is 0.
ConfidenceResult confidence_radius(std::int64_t n, std::int64_t k, double delta, Side side);

/// Smallest n with tail_bound(n, k, eps, side).primary <= delta.
std::int64_t sample_size(std::int64_t k, double eps, double delta, Side side);

struct GofResult {
    double statistic = 0.0;        ///< D = KL(X/n || P0)
    double lr_statistic = 0.0;     ///< 2 n D
    double pvalue_types = 1.0;
    double pvalue_centered = 1.0;
    double pvalue = 1.0;           ///< min of the two
    std::int64_t n = 0;
    std::int64_t k = 0;            ///< effective alphabet size
};

/// Finite-sample valid p-value for H0: X ~ Multinomial(n; p0).
///
/// The centered branch uses P(D >= d) <= upper_tail(d - ln(1 + (k-1)/n)),
/// which is valid because E D <= ln(1 + (k-1)/n) and the bound is
/// non-increasing in its argument.
GofResult gof_pvalue(const CountVector& x, const ProbabilityVector& p0);

}  // namespace relent
