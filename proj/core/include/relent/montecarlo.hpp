#pragma once

// Monte Carlo checks of the bounds at sizes where enumeration is infeasible.
//
// Trials are grouped into fixed blocks of kTrialsPerBlock; block b draws
// from RandomStream::substream(seed, b). Statistics are stored by trial
// index and reduced in that order, so every estimate is bit-identical for
// any worker count.

#include <cstdint>
#include <vector>

#include "relent/bounds.hpp"
#include "relent/divergence.hpp"

namespace relent {

inline constexpr std::int64_t kTrialsPerBlock = 4096;
inline constexpr double kDefaultConfidence = 0.999;
inline constexpr int kDefaultBootstrapResamples = 400;

struct McEstimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double confidence = kDefaultConfidence;
};

struct McOptions {
    double confidence = kDefaultConfidence;
    int bootstrap_resamples = kDefaultBootstrapResamples;
    unsigned threads = 1;
};

/// Two-sided exact binomial interval for `successes` out of `trials` at the
/// given confidence (each tail gets (1 - confidence) / 2).
struct Interval {
    double low;
    double high;
};
Interval clopper_pearson(std::int64_t successes, std::int64_t trials, double confidence);

/// Per-trial values of empirical_kl for `trials` multinomial draws, in trial order.
std::vector<double> simulate_statistic(std::int64_t n, const ProbabilityVector& p, std::int64_t trials,
                                       std::uint64_t seed, unsigned threads = 1);

/// Fraction of trials with statistic >= threshold (Upper) or <= threshold
/// (Lower), with a Clopper-Pearson interval.
McEstimate tail_estimate(const std::vector<double>& statistics, double threshold, Side side,
                         std::uint64_t seed, double confidence = kDefaultConfidence);

/// ln(mean e^{tD}) - t mean D with a percentile bootstrap interval.
McEstimate centered_log_mgf_estimate(const std::vector<double>& statistics, double t, std::uint64_t seed,
                                     const McOptions& options = {});

McEstimate estimate_tail(std::int64_t n, const ProbabilityVector& p, double threshold, Side side,
                         std::int64_t trials, std::uint64_t seed, const McOptions& options = {});

/// Requires t < n/2.
McEstimate estimate_centered_log_mgf(std::int64_t n, const ProbabilityVector& p, double t,
                                     std::int64_t trials, std::uint64_t seed, const McOptions& options = {});

enum class McCheckKind { Tail, Mgf };

/// One (n, P) configuration. For Tail cells each parameter is eps and the
/// event is D >= ln(1 + (k-1)/n) + eps, which implies D >= E D + eps; for
/// Mgf cells each parameter is t.
struct McCell {
    std::int64_t n = 1;
    ProbabilityVector p = ProbabilityVector::uniform(1);
    McCheckKind kind = McCheckKind::Tail;
    std::vector<double> params;
};

struct McSweep {
    std::vector<McCell> cells;
    std::int64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    McOptions options;
    /// Multiplies every bound; values below 1 turn the sweep into a self-test of the harness.
    double bound_scale = 1.0;
};

struct McCheck {
    std::size_t cell = 0;
    McCheckKind kind = McCheckKind::Tail;
    std::int64_t n = 0;
    std::int64_t k = 0;
    double param = 0.0;
    double threshold = 0.0;
    McEstimate estimate;
    double bound = 0.0;
    double margin = 0.0;  ///< bound - ci_low
    bool violated = false;
};

struct McReport {
    std::vector<McCheck> checks;
    std::size_t violations = 0;
    bool passed() const noexcept { return violations == 0; }
};

/// n = 1000, uniform P on k = 100 cells, eps = 0.005, 0.01, ..., 0.05.
McSweep default_mc_sweep(std::uint64_t seed);

/// A bound is violated only when the lower confidence limit exceeds it.
McReport verify_bounds_mc(const McSweep& sweep);

}  // namespace relent
