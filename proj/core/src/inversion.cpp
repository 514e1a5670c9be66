#include "relent/inversion.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "relent/errors.hpp"

namespace relent {

namespace {

constexpr int kMaxBisection = 200;
// Bisection runs well past the advertised 1e-9 so the 1e-6 bracketing certificate is robust.
constexpr double kBisectionRelTol = 1e-13;

}  // namespace

ConfidenceResult confidence_radius(std::int64_t n, std::int64_t k, double delta, Side side) {
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
    const auto bound = [&](double eps) { return tail_bound(n, k, eps, side).primary; };

    ConfidenceResult out;
    out.side = side;
    out.achieved_bound = bound(0.0);
    if (out.achieved_bound <= delta) return out;

    const double dn = static_cast<double>(n);
    const double log_inv = std::log(1.0 / delta);
    double hi = 2.0 * std::max(std::sqrt(24.0 * static_cast<double>(k) * log_inv) / dn,
                               8.0 * log_inv / dn) + 1.0;
    while (bound(hi) > delta) {
        hi *= 2.0;
        if (!std::isfinite(hi)) throw DomainError("no radius reaches delta");
    }
    double lo = 0.0;
    int it = 0;
    while (it < kMaxBisection && hi - lo > kBisectionRelTol * hi) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        if (bound(mid) <= delta) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++it;
    }
    out.radius = hi;
    out.achieved_bound = bound(hi);
    out.iterations = it;
    return out;
}

std::int64_t sample_size(std::int64_t k, double eps, double delta, Side side) {
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    const auto ok = [&](std::int64_t n) { return tail_bound(n, k, eps, side).primary <= delta; };
    if (ok(1)) return 1;
    std::int64_t lo = 1;
    std::int64_t hi = 2;
    while (!ok(hi)) {
        lo = hi;
        if (hi > std::numeric_limits<std::int64_t>::max() / 4) {
            throw DomainError("required sample size exceeds 2^61");
        }
        hi *= 2;
    }
    // ok(hi) and !ok(lo)
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (ok(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

GofResult gof_pvalue(const CountVector& x, const ProbabilityVector& p0) {
    GofResult out;
    out.k = effective_k(x, p0);
    out.n = x.n();
    out.statistic = empirical_kl(x, p0);
    out.lr_statistic = 2.0 * static_cast<double>(out.n) * out.statistic;
    if (std::isinf(out.statistic)) {
        out.pvalue_types = out.pvalue_centered = out.pvalue = 0.0;
        return out;
    }
    out.pvalue_types = types_bound(out.n, out.k, out.statistic);
    const double mean_bound = mean_upper_bound(out.n, out.k);
    out.pvalue_centered = out.statistic > mean_bound
                              ? upper_tail_bound(out.n, out.k, out.statistic - mean_bound).primary
                              : 1.0;
    out.pvalue = std::min(out.pvalue_types, out.pvalue_centered);
    return out;
}

}  // namespace relent
