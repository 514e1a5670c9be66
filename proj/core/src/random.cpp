#include "relent/random.hpp"

#include <algorithm>
#include <cmath>

#include "relent/errors.hpp"

namespace relent {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
constexpr double kInversionCutoff = 10.0;

__extension__ typedef unsigned __int128 uint128;

std::int64_t binomial_inversion(RandomStream& stream, std::int64_t n, double p) {
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = static_cast<double>(n + 1) * s;
    const double r0 = std::pow(q, static_cast<double>(n));
    for (;;) {
        double r = r0;
        double u = stream.next_unit();
        std::int64_t x = 0;
        while (u > r) {
            u -= r;
            ++x;
            if (x > n) break;
            r *= a / static_cast<double>(x) - s;
        }
        if (x <= n) return x;
    }
}

// Hormann (1993), "The generation of binomial random variates", algorithm BTRS. p <= 1/2.
std::int64_t binomial_btrs(RandomStream& stream, std::int64_t n, double p, const LogFactorialTable& lf) {
    const double dn = static_cast<double>(n);
    const double q = 1.0 - p;
    const double spq = std::sqrt(dn * p * q);
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = dn * p + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double lpq = std::log(p / q);
    const auto m = static_cast<std::int64_t>(std::floor((dn + 1.0) * p));
    const double h = lf(m) + lf(n - m);
    for (;;) {
        const double u = stream.next_unit() - 0.5;
        double v = stream.next_unit();
        const double us = 0.5 - std::abs(u);
        const double kd = std::floor((2.0 * a / us + b) * u + c);
        if (kd < 0.0 || kd > dn) continue;
        const auto k = static_cast<std::int64_t>(kd);
        if (us >= 0.07 && v <= v_r) return k;
        v = std::log(v * alpha / (a / (us * us) + b));
        if (v <= h - lf(k) - lf(n - k) + static_cast<double>(k - m) * lpq) return k;
    }
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) noexcept {
    return RandomStream(mix64(seed + kGoldenGamma) ^ mix64(index * kGoldenGamma + 0x632be59bd9b4e019ULL));
}

std::uint64_t RandomStream::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGoldenGamma);
}

double RandomStream::next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_open_unit() noexcept {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection of the biased low region.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const uint128 prod = static_cast<uint128>(next_u64()) * bound;
        if (static_cast<std::uint64_t>(prod) >= threshold) return static_cast<std::uint64_t>(prod >> 64);
    }
}

std::int64_t sample_binomial(RandomStream& stream, std::int64_t n, double p,
                             const LogFactorialTable& log_factorial) {
    if (n < 0) throw DomainError("binomial n must be non-negative");
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    const bool flip = p > 0.5;
    const double pp = flip ? 1.0 - p : p;
    std::int64_t x;
    if (static_cast<double>(n) * pp < kInversionCutoff) {
        x = binomial_inversion(stream, n, pp);
    } else {
        if (log_factorial.max() < n) throw DomainError("log-factorial table does not cover n");
        x = binomial_btrs(stream, n, pp, log_factorial);
    }
    return flip ? n - x : x;
}

MultinomialSampler::MultinomialSampler(std::int64_t n, const ProbabilityVector& p)
    : n_(n), conditional_(p.probs().size()), log_factorial_(n) {
    if (n < 1) throw DomainError("n must be a positive integer");
    double tail = 0.0;
    for (std::size_t i = conditional_.size(); i-- > 0;) {
        tail += p[i];
        conditional_[i] = tail > 0.0 ? std::min(1.0, p[i] / tail) : 0.0;
    }
}

void MultinomialSampler::draw(RandomStream& stream, std::span<std::int64_t> counts) const {
    std::int64_t remaining = n_;
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < conditional_.size() && remaining > 0; ++i) {
        const std::int64_t x = sample_binomial(stream, remaining, conditional_[i], log_factorial_);
        counts[i] = x;
        remaining -= x;
    }
    // The last positive cell has conditional probability 1, so remaining is 0 here.
}

CountVector sample_counts(std::int64_t n, const ProbabilityVector& p, RandomStream& stream) {
    const MultinomialSampler sampler(n, p);
    std::vector<std::int64_t> counts(p.probs().size());
    sampler.draw(stream, counts);
    return CountVector::make(std::move(counts));
}

}  // namespace relent
