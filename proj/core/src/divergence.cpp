#include "relent/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relent/errors.hpp"
#include "relent/numeric.hpp"

namespace relent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_paired(std::size_t a, std::size_t b) {
    if (a != b) {
        throw ShapeError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

}  // namespace

ProbabilityVector ProbabilityVector::make(std::vector<double> probs, Normalization mode) {
    if (probs.empty()) throw DomainError("probability vector must be non-empty");
    CompensatedSum total;
    bool any_positive = false;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw DomainError("probabilities must be finite and non-negative");
        }
        any_positive = any_positive || p > 0.0;
        total.add(p);
    }
    if (!any_positive) throw DomainError("probability vector has no positive entry");
    const double sum = total.value();
    if (mode == Normalization::Renormalize) {
        for (double& p : probs) p /= sum;
    } else if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
        throw DomainError("probabilities sum to " + std::to_string(sum) +
                          ", not 1 (use renormalization to rescale)");
    }
    return ProbabilityVector(std::move(probs));
}

ProbabilityVector ProbabilityVector::uniform(std::int64_t k) {
    if (k < 1) throw DomainError("alphabet size must be positive");
    return ProbabilityVector(std::vector<double>(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k)));
}

std::int64_t ProbabilityVector::support_size() const noexcept {
    return std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; });
}

CountVector CountVector::make(std::vector<std::int64_t> counts) {
    if (counts.empty()) throw DomainError("count vector must be non-empty");
    std::int64_t n = 0;
    for (auto x : counts) {
        if (x < 0) throw DomainError("counts must be non-negative");
        n += x;
    }
    if (n < 1) throw DomainError("sample size must be positive");
    return CountVector(std::move(counts), n);
}

double phi(double x) {
    if (!(x >= 0.0)) throw DomainError("phi is defined on x >= 0");
    if (x == 0.0) return 1.0;
    if (x == 1.0) return 0.0;
    const double d = x - 1.0;
    const double v = x * std::log1p(d) - d;
    return std::max(v, 0.0);
}

PhiValue phi_parts(double x) {
    const double total = phi(x);
    PhiValue out;
    out.total = total;
    out.plus = x >= 1.0 ? total : 0.0;
    out.minus = x <= 1.0 ? total : 0.0;
    return out;
}

double kl_divergence(const ProbabilityVector& q, const ProbabilityVector& p) {
    check_paired(q.probs().size(), p.probs().size());
    CompensatedSum s;
    for (std::size_t i = 0; i < q.probs().size(); ++i) {
        const double qi = q[i];
        if (qi == 0.0) continue;
        if (p[i] == 0.0) return kInf;
        s.add(qi * std::log(qi / p[i]));
    }
    return std::max(s.value(), 0.0);
}

double kl_divergence_phi_form(const ProbabilityVector& q, const ProbabilityVector& p) {
    check_paired(q.probs().size(), p.probs().size());
    CompensatedSum s;
    for (std::size_t i = 0; i < q.probs().size(); ++i) {
        if (p[i] == 0.0) {
            if (q[i] > 0.0) return kInf;
            continue;
        }
        s.add(p[i] * phi(q[i] / p[i]));
    }
    return std::max(s.value(), 0.0);
}

double empirical_kl(std::span<const std::int64_t> counts, std::int64_t n,
                    std::span<const double> p) {
    check_paired(counts.size(), p.size());
    if (n < 1) throw DomainError("sample size must be positive");
    const double dn = static_cast<double>(n);
    CompensatedSum s;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const auto x = counts[i];
        if (x == 0) continue;
        if (p[i] == 0.0) return kInf;
        const double dx = static_cast<double>(x);
        s.add(dx * std::log(dx / (dn * p[i])));
    }
    return std::max(s.value() / dn, 0.0);
}

double empirical_kl(const CountVector& x, const ProbabilityVector& p) {
    return empirical_kl(x.counts(), x.n(), p.probs());
}

std::int64_t effective_k(const CountVector& x, const ProbabilityVector& p) {
    check_paired(x.counts().size(), p.probs().size());
    std::int64_t k = 0;
    for (std::size_t i = 0; i < p.probs().size(); ++i) {
        if (p[i] > 0.0 || x[i] > 0) ++k;
    }
    return k;
}

}  // namespace relent
