#include "relent/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "parallel.hpp"
#include "relent/errors.hpp"
#include "relent/numeric.hpp"
#include "relent/random.hpp"

namespace relent {

namespace {

constexpr std::uint64_t kBootstrapTag = 0xb0075742a9c0ffeeULL;

void require_trials(std::int64_t trials) {
    if (trials < 1) throw DomainError("trials must be >= 1");
}

void require_confidence(double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("confidence must lie in (0, 1)");
}

// ln(mean exp(t x_i)) - t mean x_i over the given index multiset.
template <class IndexFn>
double centered_log_mgf_of(const std::vector<double>& xs, std::size_t count, double t, double shift,
                           IndexFn index) {
    double sum_exp = 0.0;
    double sum_x = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = xs[index(i)];
        sum_exp += std::exp(t * x - shift);
        sum_x += x;
    }
    const double dn = static_cast<double>(count);
    return std::log(sum_exp / dn) + shift - t * (sum_x / dn);
}

}  // namespace

Interval clopper_pearson(std::int64_t successes, std::int64_t trials, double confidence) {
    require_trials(trials);
    require_confidence(confidence);
    if (successes < 0 || successes > trials) throw DomainError("successes must lie in [0, trials]");
    const double alpha = 1.0 - confidence;
    const auto x = static_cast<double>(successes);
    const auto n = static_cast<double>(trials);
    Interval out{0.0, 1.0};
    if (successes > 0) out.low = boost::math::ibeta_inv(x, n - x + 1.0, alpha / 2.0);
    if (successes < trials) out.high = boost::math::ibeta_inv(x + 1.0, n - x, 1.0 - alpha / 2.0);
    return out;
}

std::vector<double> simulate_statistic(std::int64_t n, const ProbabilityVector& p, std::int64_t trials,
                                       std::uint64_t seed, unsigned threads) {
    require_trials(trials);
    const MultinomialSampler sampler(n, p);
    const auto probs = p.probs();
    std::vector<double> out(static_cast<std::size_t>(trials));
    const auto blocks = static_cast<std::size_t>((trials + kTrialsPerBlock - 1) / kTrialsPerBlock);
    detail::parallel_for(blocks, threads, [&](std::size_t b) {
        RandomStream stream = RandomStream::substream(seed, b);
        std::vector<std::int64_t> counts(probs.size());
        const auto begin = static_cast<std::int64_t>(b) * kTrialsPerBlock;
        const auto end = std::min(trials, begin + kTrialsPerBlock);
        for (auto i = begin; i < end; ++i) {
            sampler.draw(stream, counts);
            out[static_cast<std::size_t>(i)] = empirical_kl(counts, n, probs);
        }
    });
    return out;
}

McEstimate tail_estimate(const std::vector<double>& statistics, double threshold, Side side,
                         std::uint64_t seed, double confidence) {
    if (statistics.empty()) throw DomainError("no statistics to estimate from");
    if (side == Side::TwoSided) throw DomainError("tail estimates take an upper or lower side");
    const auto hits = std::count_if(statistics.begin(), statistics.end(), [&](double d) {
        return side == Side::Upper ? d >= threshold : d <= threshold;
    });
    const auto trials = static_cast<std::int64_t>(statistics.size());
    const Interval ci = clopper_pearson(hits, trials, confidence);
    McEstimate out;
    out.point = static_cast<double>(hits) / static_cast<double>(trials);
    out.ci_low = std::min(ci.low, out.point);
    out.ci_high = std::max(ci.high, out.point);
    out.trials = trials;
    out.seed = seed;
    out.confidence = confidence;
    return out;
}

McEstimate centered_log_mgf_estimate(const std::vector<double>& statistics, double t, std::uint64_t seed,
                                     const McOptions& options) {
    if (statistics.empty()) throw DomainError("no statistics to estimate from");
    require_confidence(options.confidence);
    McEstimate out;
    out.trials = static_cast<std::int64_t>(statistics.size());
    out.seed = seed;
    out.confidence = options.confidence;
    if (t == 0.0) return out;

    const double shift = t * (t > 0.0 ? *std::max_element(statistics.begin(), statistics.end())
                                      : *std::min_element(statistics.begin(), statistics.end()));
    const std::size_t count = statistics.size();
    out.point = centered_log_mgf_of(statistics, count, t, shift, [](std::size_t i) { return i; });
    out.ci_low = out.ci_high = out.point;

    const int resamples = options.bootstrap_resamples;
    if (resamples < 1) return out;
    std::vector<double> boot(static_cast<std::size_t>(resamples));
    detail::parallel_for(boot.size(), options.threads, [&](std::size_t r) {
        RandomStream stream = RandomStream::substream(seed ^ kBootstrapTag, r);
        std::vector<std::size_t> idx(count);
        for (auto& i : idx) i = static_cast<std::size_t>(stream.next_below(count));
        boot[r] = centered_log_mgf_of(statistics, count, t, shift, [&](std::size_t i) { return idx[i]; });
    });
    std::sort(boot.begin(), boot.end());
    const double tail = (1.0 - options.confidence) / 2.0;
    const auto at = [&](double q) {
        const double pos = q * static_cast<double>(boot.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, boot.size() - 1);
        return boot[lo] + (pos - static_cast<double>(lo)) * (boot[hi] - boot[lo]);
    };
    out.ci_low = std::min(at(tail), out.point);
    out.ci_high = std::max(at(1.0 - tail), out.point);
    return out;
}

McEstimate estimate_tail(std::int64_t n, const ProbabilityVector& p, double threshold, Side side,
                         std::int64_t trials, std::uint64_t seed, const McOptions& options) {
    const auto stats = simulate_statistic(n, p, trials, seed, options.threads);
    return tail_estimate(stats, threshold, side, seed, options.confidence);
}

McEstimate estimate_centered_log_mgf(std::int64_t n, const ProbabilityVector& p, double t,
                                     std::int64_t trials, std::uint64_t seed, const McOptions& options) {
    if (!(t < static_cast<double>(n) / 2.0)) throw DomainError("MGF estimates require t < n/2");
    require_trials(trials);
    if (t == 0.0) {
        McEstimate out;
        out.trials = trials;
        out.seed = seed;
        out.confidence = options.confidence;
        return out;
    }
    const auto stats = simulate_statistic(n, p, trials, seed, options.threads);
    return centered_log_mgf_estimate(stats, t, seed, options);
}

McSweep default_mc_sweep(std::uint64_t seed) {
    McSweep sweep;
    sweep.seed = seed;
    McCell cell;
    cell.n = 1000;
    cell.p = ProbabilityVector::uniform(100);
    cell.kind = McCheckKind::Tail;
    for (int i = 1; i <= 10; ++i) cell.params.push_back(0.005 * i);
    sweep.cells.push_back(std::move(cell));
    return sweep;
}

McReport verify_bounds_mc(const McSweep& sweep) {
    McReport report;
    for (std::size_t c = 0; c < sweep.cells.size(); ++c) {
        const McCell& cell = sweep.cells[c];
        const std::uint64_t cell_seed = RandomStream::substream(sweep.seed, c).next_u64();
        const auto k = cell.p.support_size();
        const auto stats = simulate_statistic(cell.n, cell.p, sweep.trials, cell_seed, sweep.options.threads);
        for (double param : cell.params) {
            McCheck check;
            check.cell = c;
            check.kind = cell.kind;
            check.n = cell.n;
            check.k = k;
            check.param = param;
            if (cell.kind == McCheckKind::Tail) {
                check.threshold = mean_upper_bound(cell.n, k) + param;
                check.estimate = tail_estimate(stats, check.threshold, Side::Upper, cell_seed,
                                               sweep.options.confidence);
                check.bound = upper_tail_bound(cell.n, k, param).primary;
            } else {
                check.threshold = param;
                check.estimate = centered_log_mgf_estimate(stats, param, cell_seed, sweep.options);
                check.bound = mgf_bound(cell.n, k, param);
            }
            check.bound *= sweep.bound_scale;
            check.margin = check.bound - check.estimate.ci_low;
            check.violated = check.estimate.ci_low > check.bound;
            if (check.violated) ++report.violations;
            report.checks.push_back(check);
        }
    }
    return report;
}

}  // namespace relent
