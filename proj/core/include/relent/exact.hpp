#pragma once

// Exact laws of the empirical relative entropy and of the binomial
// quantities it is built from, by full enumeration of the support.
//
// These are the oracles the closed-form bounds are certified against; they
// are only feasible for small n and k (see kDefaultCompositionBudget).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "relent/bounds.hpp"
#include "relent/divergence.hpp"

namespace relent {

inline constexpr double kDefaultCompositionBudget = 1e7;
/// Statistic values closer than this are the same atom.
inline constexpr double kAtomMergeTolerance = 1e-13;

struct Atom {
    double value = 0.0;
    double prob = 0.0;
};

/// A finitely supported law: atoms sorted by value with near-equal values merged.
class ExactDistribution {
public:
    /// Sorts atoms by value, drops zero-probability atoms and merges values
    /// within kAtomMergeTolerance of the first value of their group.
    static ExactDistribution from_atoms(std::vector<Atom> atoms, std::int64_t n,
                                        std::vector<double> p);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::int64_t n() const noexcept { return n_; }
    std::span<const double> p() const noexcept { return p_; }

    double total_probability() const;
    double min_value() const { return atoms_.front().value; }
    double max_value() const { return atoms_.back().value; }

private:
    std::vector<Atom> atoms_;
    std::int64_t n_ = 0;
    std::vector<double> p_;
};

/// C(n + k - 1, k - 1), the number of compositions of n into k parts, as a double.
double composition_count(std::int64_t n, std::int64_t k);

/// Calls visit(counts, probability) for every composition of n into p.k()
/// parts with non-zero multinomial probability, in colexicographic odometer
/// order. Throws ResourceError if the composition count exceeds budget.
void for_each_composition(std::int64_t n, const ProbabilityVector& p,
                          const std::function<void(std::span<const std::int64_t>, double)>& visit,
                          double budget = kDefaultCompositionBudget);

/// Exact law of empirical_kl(X, p) for X ~ Multinomial(n; p).
ExactDistribution enumerate_statistic(std::int64_t n, const ProbabilityVector& p,
                                      double budget = kDefaultCompositionBudget);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double central_moment = 0.0;  ///< E (Z - E Z)^{2m}
};

Moments exact_moments(const ExactDistribution& d, std::int64_t m);

/// P(Z >= threshold) for Side::Upper, P(Z <= threshold) for Side::Lower.
double exact_tail(const ExactDistribution& d, double threshold, Side side);

/// ln E exp(t (Z - E Z)), evaluated with a max shift.
double exact_centered_log_mgf(const ExactDistribution& d, double t);

/// Which half of a split quantity: the part at or above its mean, or at or below.
enum class Part { Plus, Minus };

/// Law of n KL((X/n, 1 - X/n) || (p, 1 - p)) 1{X >= np} (Plus) or 1{X <= np}
/// (Minus) for X ~ Binomial(n, p).
ExactDistribution binomial_half_kl_law(std::int64_t n, double p, Part part);

/// Law of np phi_+(X/np) (Plus) or np phi_-(X/np) (Minus) for X ~ Binomial(n, p).
ExactDistribution binomial_phi_part_law(std::int64_t n, double p, Part part);

/// max over atoms x of P(Z >= x) - exp(-x). Non-positive (up to rounding)
/// exactly when Z is stochastically dominated by Exponential(1).
double exponential_domination_margin(const ExactDistribution& d);

double binomial_domination_margin(std::int64_t n, double p, Part part);
double phi_part_domination_margin(std::int64_t n, double p, Part part);

struct ReductionGap {
    double lhs = 1.0;      ///< E exp(t (D - E D)) from the joint law
    double rhs = 1.0;      ///< product of square-rooted binomial factors
    double log_lhs = 0.0;
    double log_rhs = 0.0;
};

/// Both sides of the product inequality that decouples the multinomial
/// coordinates: E e^{t(D - ED)} <= prod_i sqrt(E e^{2t(Y+_i - EY+_i)}) sqrt(E e^{2t(Y-_i - EY-_i)})
/// with Y+-_i = p_i phi_+-(X_i / (n p_i)) and X_i ~ Binomial(n, p_i).
/// Zero-probability cells are dropped.
ReductionGap reduction_gap(std::int64_t n, const ProbabilityVector& p, double t,
                           double budget = kDefaultCompositionBudget);

/// Right side of
///   ln E e^{t(Z - EZ)} = ln(1 + t EZ + int_0^inf t (e^{tx} - 1) P(Z >= x) dx) - t EZ
/// evaluated with the exact piecewise-constant survival function, minus the
/// directly computed left side. Requires non-negative atoms.
double mgf_representation_gap(const ExactDistribution& d, double t);

}  // namespace relent
