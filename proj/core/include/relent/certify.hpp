#pragma once

// Sweeps that check every closed-form bound against the exact oracles.
//
// Each sweep returns a CertificationReport. Cells are evaluated in parallel
// but collected in cell order, so reports do not depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "relent/divergence.hpp"

namespace relent {

/// Absolute slack on inequalities between log-MGFs.
inline constexpr double kLogMgfTolerance = 1e-10;
/// Absolute slack on inequalities between probabilities.
inline constexpr double kProbabilityTolerance = 1e-12;

struct Violation {
    std::string check;
    std::string where;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct CertificationReport {
    std::string name;
    std::size_t checks = 0;
    /// Smallest observed rhs - lhs over all checks.
    double worst_slack = 0.0;
    std::vector<Violation> violations;

    bool passed() const noexcept { return violations.empty(); }
    void merge(CertificationReport other);
};

/// The distributions swept by default for alphabet size k: uniform plus
/// skewed vectors, including one with a zero-probability cell.
std::vector<ProbabilityVector> default_distributions(std::int64_t k);

/// Evenly spaced points from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t points);

/// Alphabet sizes, distributions and sample sizes shared by the exact sweeps.
struct ExactSweep {
    std::int64_t min_n = 1;
    std::int64_t max_n = 12;
    std::vector<std::int64_t> ks = {2, 3};
    /// When empty, default_distributions(k) for each k in ks.
    std::vector<ProbabilityVector> distributions;
    std::size_t t_points = 50;
    std::size_t eps_points = 50;
    double eps_max = 3.0;
    std::vector<std::int64_t> moment_orders = {1, 2, 3};
    unsigned threads = 1;
};

/// Centered log-MGF against mgf_bound on t in [-5n, 0.49n].
CertificationReport certify_mgf(const ExactSweep& sweep);
/// Exact upper and lower tails against the closed forms, plus the relaxation chains.
CertificationReport certify_tails(const ExactSweep& sweep);
/// Central moments, variance and mean against their bounds.
CertificationReport certify_moments(const ExactSweep& sweep);
/// The survival-integral representation of the log-MGF at t in
/// {-2, -0.5, 0.3, 0.9 min(1, n/2)}.
CertificationReport certify_representation(const ExactSweep& sweep);
/// All four exact sweeps merged.
CertificationReport certify_exact(const ExactSweep& sweep);

struct DominanceSweep {
    std::int64_t max_n = 200;
    /// When empty, 0.02, 0.05, ..., 0.98.
    std::vector<double> ps;
    std::size_t t_points = 50;
    unsigned threads = 1;
};

std::vector<double> default_binomial_ps();

/// Exponential domination margins of the binomial half-KL and phi-part laws.
CertificationReport certify_dominance(const DominanceSweep& sweep);
/// Centered log-MGF of every dominated law against B(t) on [-20, 0.99], and B
/// against its two relaxations.
CertificationReport certify_envelope(const DominanceSweep& sweep);

struct ReductionSweep {
    std::int64_t max_n = 8;
    std::vector<std::int64_t> ks = {2, 3};
    std::vector<ProbabilityVector> distributions;
    std::size_t t_points = 20;
    unsigned threads = 1;
};

/// Joint centered MGF against the product of binomial factors on t in [-n, n/2].
CertificationReport certify_reduction(const ReductionSweep& sweep);

}  // namespace relent
