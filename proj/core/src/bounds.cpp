#include "relent/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relent/errors.hpp"
#include "relent/numeric.hpp"

namespace relent {

namespace {

void require_sizes(std::int64_t n, std::int64_t k) {
    if (n < 1) throw DomainError("n must be a positive integer");
    if (k < 1) throw DomainError("k must be a positive integer");
}

void require_eps(double eps) {
    if (!(eps >= 0.0)) throw DomainError("eps must be non-negative");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// -s - ln(1 - s), the centered log-MGF of a unit-rate exponential at s < 1.
double exp_cgf(double s) { return -s - std::log1p(-s); }

}  // namespace

std::string_view to_string(Side side) noexcept {
    switch (side) {
        case Side::Upper: return "upper";
        case Side::Lower: return "lower";
        case Side::TwoSided: return "two_sided";
    }
    return "upper";
}

Side parse_side(std::string_view text) {
    if (text == "upper") return Side::Upper;
    if (text == "lower") return Side::Lower;
    if (text == "two_sided" || text == "two-sided") return Side::TwoSided;
    throw DomainError("unknown side '" + std::string(text) + "'");
}

void BoundQuery::validate() const {
    require_sizes(n, k);
    require_eps(eps);
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
    if (m < 1) throw DomainError("moment order m must be >= 1");
    if (!(q >= 1.0)) throw DomainError("norm order q must be >= 1");
}

MgfBoundParts mgf_bound_parts(std::int64_t n, std::int64_t k, double t) {
    require_sizes(n, k);
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    const double pole = dn / 2.0;
    if (!(t < pole - 1e-9 * dn)) {
        throw PoleError("mgf bound requires t < n/2 = " + std::to_string(pole), pole);
    }
    MgfBoundParts out;
    if (t == 0.0) return out;
    const double s = 2.0 * t / dn;
    out.quadratic = dk * s * s / (1.0 - s);
    out.gamma = 2.0 * dk * exp_cgf(s);
    out.value = std::min(out.quadratic, out.gamma);
    if (t < 0.0) {
        out.trivial = -t * (dk - 1.0) / dn;
        out.value = std::min(out.value, out.trivial);
    }
    return out;
}

double mgf_bound(std::int64_t n, std::int64_t k, double t) {
    return mgf_bound_parts(n, k, t).value;
}

EnvelopeParts subgamma_envelope_parts(double t) {
    if (!(t < 1.0)) throw DomainError("subgamma envelope requires t < 1");
    EnvelopeParts out;
    const double quad = t * t / (1.0 - t);
    out.quadratic = quad;
    out.gamma = 2.0 * exp_cgf(t);
    if (t <= 0.0) {
        out.value = quad;
        out.log_form = quad;
    } else {
        const double small_mean = std::log1p(quad - t * t / 5.0);
        const double large_mean = std::log1p(t / 5.0 + quad) - t / 5.0;
        out.value = std::max(small_mean, large_mean);
        out.log_form = std::log1p(quad);
    }
    return out;
}

double subgamma_envelope(double t) { return subgamma_envelope_parts(t).value; }

TailBoundReport upper_tail_bound(std::int64_t n, std::int64_t k, double eps) {
    require_sizes(n, k);
    require_eps(eps);
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    const double ne = dn * eps;
    TailBoundReport out;
    out.side = Side::Upper;
    out.primary = clamp01(std::exp(2.0 * dk * std::log1p(ne / (4.0 * dk)) - ne / 2.0));
    out.relaxed_quadratic = clamp01(std::exp(-3.0 * ne * ne / (48.0 * dk + 8.0 * ne)));
    out.relaxed_minform = clamp01(std::exp(-std::min(ne * ne / (24.0 * dk), ne / 8.0)));
    return out;
}

TailBoundReport lower_tail_bound(std::int64_t n, std::int64_t k, double eps) {
    require_sizes(n, k);
    require_eps(eps);
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    TailBoundReport out;
    out.side = Side::Lower;
    const double a = dn * eps / (2.0 * dk);
    if (a > 1.0) {
        out.primary = out.relaxed_quadratic = out.relaxed_minform = 0.0;
        return out;
    }
    // 1 - sqrt(1 - a) without cancellation.
    const double gap = a / (1.0 + std::sqrt(1.0 - a));
    out.primary = clamp01(std::exp(-dk * gap * gap));
    out.relaxed_quadratic = clamp01(std::exp(-dn * dn * eps * eps / (16.0 * dk)));
    out.relaxed_minform = out.relaxed_quadratic;
    return out;
}

double lower_tail_support_cutoff(std::int64_t n, std::int64_t k, double eps) {
    return eps > mean_upper_bound(n, k) ? 0.0 : 1.0;
}

TailBoundReport sharpened_lower_tail_bound(std::int64_t n, std::int64_t k, double eps) {
    TailBoundReport out = lower_tail_bound(n, k, eps);
    if (lower_tail_support_cutoff(n, k, eps) == 0.0) {
        out.primary = out.relaxed_quadratic = out.relaxed_minform = 0.0;
    }
    return out;
}

TailBoundReport two_sided_tail_bound(std::int64_t n, std::int64_t k, double eps) {
    const TailBoundReport up = upper_tail_bound(n, k, eps);
    const TailBoundReport lo = sharpened_lower_tail_bound(n, k, eps);
    TailBoundReport out;
    out.side = Side::TwoSided;
    out.primary = clamp01(up.primary + lo.primary);
    out.relaxed_quadratic = clamp01(up.relaxed_quadratic + lo.relaxed_quadratic);
    out.relaxed_minform = clamp01(up.relaxed_minform + lo.relaxed_minform);
    return out;
}

TailBoundReport tail_bound(std::int64_t n, std::int64_t k, double eps, Side side) {
    switch (side) {
        case Side::Upper: return upper_tail_bound(n, k, eps);
        case Side::Lower: return sharpened_lower_tail_bound(n, k, eps);
        case Side::TwoSided: return two_sided_tail_bound(n, k, eps);
    }
    return upper_tail_bound(n, k, eps);
}

double conjecture_form_bound(std::int64_t n, std::int64_t k, double eps) {
    require_sizes(n, k);
    require_eps(eps);
    if (k < 2) throw DomainError("conjecture-form bound requires k >= 2");
    const double ne = static_cast<double>(n) * eps;
    const double rate = std::min(ne * ne / static_cast<double>(k - 1), ne);
    return clamp01(2.0 * std::exp(-rate / 48.0));
}

double moment_bound(std::int64_t n, std::int64_t k, std::int64_t m) {
    require_sizes(n, k);
    if (m < 1) throw DomainError("moment order m must be >= 1");
    const double dm = static_cast<double>(m);
    const double terms[] = {dm * std::log(static_cast<double>(k)) + std::lgamma(dm + 1.0),
                            std::lgamma(2.0 * dm + 1.0)};
    const double log_bound = 6.0 * dm * std::log(2.0) + log_sum_exp(terms) -
                             2.0 * dm * std::log(static_cast<double>(n));
    return std::exp(log_bound);
}

double qnorm_bound(std::int64_t n, std::int64_t k, double q) {
    require_sizes(n, k);
    if (!(q >= 1.0)) throw DomainError("norm order q must be >= 1");
    return 24.0 / static_cast<double>(n) * (std::sqrt(static_cast<double>(k) * q) + q);
}

double variance_bound(std::int64_t n, std::int64_t k) {
    require_sizes(n, k);
    const double dn = static_cast<double>(n);
    return 8.0 * static_cast<double>(k) / (dn * dn);
}

double mean_upper_bound(std::int64_t n, std::int64_t k) {
    require_sizes(n, k);
    return std::log1p(static_cast<double>(k - 1) / static_cast<double>(n));
}

double mean_upper_bound_linear(std::int64_t n, std::int64_t k) {
    require_sizes(n, k);
    return static_cast<double>(k - 1) / static_cast<double>(n);
}

double types_bound(std::int64_t n, std::int64_t k, double eps) {
    require_sizes(n, k);
    require_eps(eps);
    const double log_types = log_binomial_coefficient(static_cast<double>(n + k - 1),
                                                      static_cast<double>(k - 1));
    return clamp01(std::exp(log_types - static_cast<double>(n) * eps));
}

namespace experimental {

double conjectured_mgf_bound(std::int64_t n, std::int64_t k, double t) {
    require_sizes(n, k);
    const double dn = static_cast<double>(n);
    if (!(t >= 0.0 && t < dn)) throw DomainError("conjectured bound is stated for 0 <= t < n");
    return static_cast<double>(k - 1) * exp_cgf(t / dn);
}

}  // namespace experimental

}  // namespace relent
