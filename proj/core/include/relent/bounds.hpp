#pragma once

// Closed-form concentration bounds for the empirical relative entropy
// D = KL(X/n || P) of X ~ Multinomial(n; P) over an alphabet of size k.
//
// k is always the effective alphabet size (cells of zero probability
// dropped). Probability-valued bounds are clamped to [0, 1].

#include <cstdint>
#include <string_view>

namespace relent {

enum class Side { Upper, Lower, TwoSided };

std::string_view to_string(Side side) noexcept;
/// Accepts "upper", "lower", "two_sided" (also "two-sided"). Throws DomainError otherwise.
Side parse_side(std::string_view text);

/// Evaluation point for the bound formulas. Fields not used by a formula are ignored.
struct BoundQuery {
    std::int64_t n = 1;
    std::int64_t k = 1;
    double t = 0.0;
    double eps = 0.0;
    double delta = 1.0;
    std::int64_t m = 1;
    double q = 1.0;

    /// Checks n, k, m >= 1, eps >= 0, 0 < delta <= 1 and q >= 1.
    void validate() const;
};

struct TailBoundReport {
    double primary = 1.0;
    double relaxed_quadratic = 1.0;
    double relaxed_minform = 1.0;
    Side side = Side::Upper;
};

/// The branches of the centered log-MGF bound at t < n/2.
struct MgfBoundParts {
    double quadratic = 0.0;  ///< (4k t^2 / n^2) / (1 - 2t/n)
    double gamma = 0.0;      ///< 2k ln(exp(-2t/n) / (1 - 2t/n)), shape 2k rate n/2
    double trivial = 0.0;    ///< |t| (k-1)/n, only meaningful for t <= 0
    double value = 0.0;      ///< minimum of the applicable branches
};

/// Upper bound on ln E exp(t (D - E D)) for t < n/2.
///
/// For t < 0 the trivial bound |t| (k-1)/n, implied by D >= 0, is folded in.
/// Queries with t >= n/2 - 1e-9 n throw PoleError carrying n/2.
double mgf_bound(std::int64_t n, std::int64_t k, double t);
MgfBoundParts mgf_bound_parts(std::int64_t n, std::int64_t k, double t);

/// The subgamma envelope B(t) for t < 1 and its relaxations.
struct EnvelopeParts {
    double value = 0.0;       ///< B(t)
    double quadratic = 0.0;   ///< t^2 / (1 - t)
    double log_form = 0.0;    ///< t^2/(1-t) for t <= 0, ln(1 + t^2/(1-t)) for t >= 0
    double gamma = 0.0;       ///< 2 ln(exp(-t) / (1 - t))
};

double subgamma_envelope(double t);
EnvelopeParts subgamma_envelope_parts(double t);

/// P(D >= E D + eps) and its two relaxations.
/// primary <= relaxed_quadratic <= relaxed_minform.
TailBoundReport upper_tail_bound(std::int64_t n, std::int64_t k, double eps);

/// P(D <= E D - eps) in its closed form, stated for eps <= 2k/n and zero
/// beyond. relaxed_minform repeats relaxed_quadratic; the lower side has a
/// single relaxation.
TailBoundReport lower_tail_bound(std::int64_t n, std::int64_t k, double eps);

/// 0 when eps > mean_upper_bound(n, k), where D >= 0 rules the event out; 1 otherwise.
double lower_tail_support_cutoff(std::int64_t n, std::int64_t k, double eps);

/// lower_tail_bound with the support cutoff applied: the minimum of the two
/// applicable bounds.
TailBoundReport sharpened_lower_tail_bound(std::int64_t n, std::int64_t k, double eps);

/// P(|D - E D| >= eps) as the sum of the upper and sharpened lower bounds, clamped to 1.
TailBoundReport two_sided_tail_bound(std::int64_t n, std::int64_t k, double eps);

/// Dispatch used by inversion: upper, sharpened lower, or two-sided.
TailBoundReport tail_bound(std::int64_t n, std::int64_t k, double eps, Side side);

/// min(1, 2 exp(-(1/48) min{n^2 eps^2 / (k-1), n eps})). Requires k >= 2.
double conjecture_form_bound(std::int64_t n, std::int64_t k, double eps);

/// Bound on E (D - E D)^{2m}: 2^{6m} (k^m m! + (2m)!) / n^{2m}.
double moment_bound(std::int64_t n, std::int64_t k, std::int64_t m);

/// Bound on the q-norm (E |D - E D|^q)^{1/q}: (24/n)(sqrt(kq) + q), q >= 1.
double qnorm_bound(std::int64_t n, std::int64_t k, double q);

/// Var D <= 8k / n^2.
double variance_bound(std::int64_t n, std::int64_t k);

/// E D <= ln(1 + (k-1)/n).
double mean_upper_bound(std::int64_t n, std::int64_t k);
/// The weaker E D <= (k-1)/n.
double mean_upper_bound_linear(std::int64_t n, std::int64_t k);

/// Method-of-types bound P(D >= eps) <= min(1, C(n+k-1, k-1) exp(-n eps)).
double types_bound(std::int64_t n, std::int64_t k, double eps);

namespace experimental {

/// Conjectured centered log-MGF bound (k-1) ln(exp(-t/n) / (1 - t/n)) for
/// 0 <= t < n: a gamma law with shape k-1 and rate n. Unproven; exposed for
/// falsification runs only and never used as a certified bound.
double conjectured_mgf_bound(std::int64_t n, std::int64_t k, double t);

}  // namespace experimental

}  // namespace relent
