#pragma once

// Relative entropy of multinomial observations.
//
// All logarithms are natural. The statistic returned by empirical_kl is
// D = KL(X/n || P); 2nD is the likelihood-ratio statistic of the hypothesis
// that X ~ Multinomial(n; P).

#include <cstdint>
#include <span>
#include <vector>

namespace relent {

/// Absolute tolerance on sum(p) - 1 accepted without renormalization.
inline constexpr double kProbabilitySumTolerance = 1e-12;

enum class Normalization { Strict, Renormalize };

/// A distribution P = (p_1, ..., p_k) on a finite alphabet.
///
/// Entries are non-negative, at least one is positive and they sum to one
/// within kProbabilitySumTolerance. With Normalization::Renormalize any
/// positive total is accepted and divided out.
class ProbabilityVector {
public:
    static ProbabilityVector make(std::vector<double> probs,
                                  Normalization mode = Normalization::Strict);
    static ProbabilityVector uniform(std::int64_t k);

    std::span<const double> probs() const noexcept { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::int64_t k() const noexcept { return static_cast<std::int64_t>(probs_.size()); }

    /// Number of cells with p_i > 0.
    std::int64_t support_size() const noexcept;

    friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

private:
    explicit ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {}
    std::vector<double> probs_;
};

/// A multinomial observation (X_1, ..., X_k) with n = sum X_i >= 1.
class CountVector {
public:
    static CountVector make(std::vector<std::int64_t> counts);

    std::span<const std::int64_t> counts() const noexcept { return counts_; }
    std::int64_t operator[](std::size_t i) const { return counts_[i]; }
    std::int64_t n() const noexcept { return n_; }
    std::int64_t k() const noexcept { return static_cast<std::int64_t>(counts_.size()); }

private:
    CountVector(std::vector<std::int64_t> counts, std::int64_t n)
        : counts_(std::move(counts)), n_(n) {}
    std::vector<std::int64_t> counts_;
    std::int64_t n_;
};

struct PhiValue {
    double plus = 0.0;
    double minus = 0.0;
    double total = 0.0;
};

/// phi(x) = x ln x - x + 1 for x > 0 and phi(0) = 1. Throws DomainError for x < 0.
double phi(double x);

/// phi split at x = 1 into its non-decreasing and non-increasing parts.
PhiValue phi_parts(double x);

/// KL(q || p) = sum q_i ln(q_i / p_i), with 0 ln(0/p) = 0. Returns +infinity
/// when some q_i > 0 has p_i = 0. Throws ShapeError on length mismatch.
double kl_divergence(const ProbabilityVector& q, const ProbabilityVector& p);

/// The same divergence evaluated as sum p_i phi(q_i / p_i). Agrees with
/// kl_divergence to rounding; kept as an independent evaluation route.
double kl_divergence_phi_form(const ProbabilityVector& q, const ProbabilityVector& p);

/// Empirical relative entropy KL(X/n || P). Returns +infinity for an
/// observation impossible under P.
double empirical_kl(std::span<const std::int64_t> counts, std::int64_t n,
                    std::span<const double> p);
double empirical_kl(const CountVector& x, const ProbabilityVector& p);

/// Alphabet size after dropping cells with p_i = 0 and X_i = 0.
std::int64_t effective_k(const CountVector& x, const ProbabilityVector& p);

}  // namespace relent
