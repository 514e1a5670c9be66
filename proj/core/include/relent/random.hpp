#pragma once

// Counter-based random streams and exact multinomial sampling.
//
// A stream is a (key, counter) pair whose i-th output is a SplitMix64
// finalization of key + i * golden-gamma. Substreams for blocks of trials
// mix the block index into the key, so any assignment of blocks to workers
// yields identical draws.

#include <cstdint>
#include <span>
#include <vector>

#include "relent/divergence.hpp"
#include "relent/numeric.hpp"

namespace relent {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) noexcept : key_(mix64(key)) {}

    /// Stream number `index` derived from a master seed.
    static RandomStream substream(std::uint64_t seed, std::uint64_t index) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() noexcept;
    /// Uniform double in (0, 1).
    double next_open_unit() noexcept;
    /// Uniform integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Exact Binomial(n, p) variate: sequential inversion when min(p, 1-p) n < 10,
/// otherwise Hormann's BTRS transformed rejection. `log_factorial` must cover n.
std::int64_t sample_binomial(RandomStream& stream, std::int64_t n, double p,
                             const LogFactorialTable& log_factorial);

/// Multinomial(n; p) draws by conditional binomials
/// X_i ~ Binomial(n - X_1 - ... - X_{i-1}, p_i / (p_i + ... + p_k)).
class MultinomialSampler {
public:
    MultinomialSampler(std::int64_t n, const ProbabilityVector& p);

    void draw(RandomStream& stream, std::span<std::int64_t> counts) const;
    std::int64_t n() const noexcept { return n_; }
    std::int64_t k() const noexcept { return static_cast<std::int64_t>(conditional_.size()); }

private:
    std::int64_t n_;
    std::vector<double> conditional_;  // p_i / sum_{j >= i} p_j
    LogFactorialTable log_factorial_;
};

CountVector sample_counts(std::int64_t n, const ProbabilityVector& p, RandomStream& stream);

}  // namespace relent
