// Acceptance gate. Runs every criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "relent/bounds.hpp"
#include "relent/certify.hpp"
#include "relent/exact.hpp"
#include "relent/inversion.hpp"
#include "relent/montecarlo.hpp"

using namespace relent;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string summary(const CertificationReport& r) {
    std::string s = fmt("%zu checks, %zu violations, worst slack %.3g", r.checks, r.violations.size(),
                        r.worst_slack);
    if (!r.violations.empty()) {
        const auto& v = r.violations.front();
        s += fmt("; first: %s at %s (%.17g > %.17g)", v.check.c_str(), v.where.c_str(), v.lhs, v.rhs);
    }
    return s;
}

// Golden values. `expected` is recomputed here in long double straight from
// the defining expression; `got` comes from the library.
struct Golden {
    const char* name;
    double got;
    long double expected;
};

Outcome closed_form_goldens() {
    const long double ln2 = std::log(2.0L);
    const auto half = ProbabilityVector::make({0.5, 0.5});
    const auto two = enumerate_statistic(2, half);
    const auto mo = exact_moments(two, 1);
    const auto gof_a = gof_pvalue(CountVector::make({8, 2}), half);
    const auto gof_b = gof_pvalue(CountVector::make({90, 10}), half);
    const long double d_a = 0.8L * std::log(1.6L) + 0.2L * std::log(0.4L);
    const long double d_b = 0.9L * std::log(1.8L) + 0.1L * std::log(0.2L);
    const long double eps_a = d_a - std::log(1.1L);

    const std::vector<Golden> goldens = {
        {"phi(2)", phi(2.0), 2 * ln2 - 1},
        {"phi_plus(2)", phi_parts(2.0).plus, 2 * ln2 - 1},
        {"phi_minus(0.5)", phi_parts(0.5).minus, 0.5L * std::log(0.5L) + 0.5L},
        {"kl((1,0) || uniform)", kl_divergence(ProbabilityVector::make({1.0, 0.0}), half), ln2},
        {"empirical_kl(3,1)", empirical_kl(CountVector::make({3, 1}), half),
         0.75L * std::log(1.5L) + 0.25L * std::log(0.5L)},
        {"empirical_kl(0,4)", empirical_kl(CountVector::make({0, 4}), half), ln2},
        {"mgf_bound(2,2,0.5)", mgf_bound(2, 2, 0.5), std::min(1.0L, 4 * (ln2 - 0.5L))},
        {"mgf_bound(2,2,-2)", mgf_bound(2, 2, -2.0), 1.0L},
        {"mgf_bound(1000,10,100)", mgf_bound(1000, 10, 100.0), 20 * (-0.2L - std::log(0.8L))},
        {"B(-1)", subgamma_envelope(-1.0), 0.5L},
        {"B(0.5)", subgamma_envelope(0.5), std::max(std::log(1.45L), std::log(1.6L) - 0.1L)},
        {"upper(10,2,0.5)", upper_tail_bound(10, 2, 0.5).primary, std::pow(1.625L, 4) * std::exp(-2.5L)},
        {"upper(10,2,0.5) quadratic", upper_tail_bound(10, 2, 0.5).relaxed_quadratic, std::exp(-75.0L / 136)},
        {"upper(10,2,0.5) minform", upper_tail_bound(10, 2, 0.5).relaxed_minform, std::exp(-25.0L / 48)},
        {"upper(100,5,1)", upper_tail_bound(100, 5, 1.0).primary, std::pow(6.0L, 10) * std::exp(-50.0L)},
        {"lower(10,2,0.2)", lower_tail_bound(10, 2, 0.2).primary,
         std::exp(-2 * std::pow(1 - std::sqrt(0.5L), 2))},
        {"lower(10,2,0.2) quadratic", lower_tail_bound(10, 2, 0.2).relaxed_quadratic, std::exp(-0.125L)},
        {"lower(10,2,0.4)", lower_tail_bound(10, 2, 0.4).primary, std::exp(-2.0L)},
        {"conjecture(100,2,0.1)", conjecture_form_bound(100, 2, 0.1), 1.0L},
        {"conjecture(1000,2,0.5)", conjecture_form_bound(1000, 2, 0.5), 2 * std::exp(-500.0L / 48)},
        {"moment(10,2,1)", moment_bound(10, 2, 1), 64.0L * 4 / 100},
        {"moment(100,5,2)", moment_bound(100, 5, 2), 4096.0L * 74 / 1e8L},
        {"qnorm(100,4,2)", qnorm_bound(100, 4, 2.0), 0.24L * (std::sqrt(8.0L) + 2)},
        {"qnorm(24,1,1)", qnorm_bound(24, 1, 1.0), 2.0L},
        {"variance(10,2)", variance_bound(10, 2), 0.16L},
        {"variance(100,5)", variance_bound(100, 5), 0.004L},
        {"mean(10,2)", mean_upper_bound(10, 2), std::log(1.1L)},
        {"mean(2,2)", mean_upper_bound(2, 2), std::log(1.5L)},
        {"types(10,2,0.5)", types_bound(10, 2, 0.5), 11 * std::exp(-5.0L)},
        {"types(100,2,0.368064)", types_bound(100, 2, 0.368064), 101 * std::exp(-36.8064L)},
        {"gof(8,2) statistic", gof_a.statistic, d_a},
        {"gof(8,2) pvalue_types", gof_a.pvalue_types, std::min(1.0L, 11 * std::exp(-10 * d_a))},
        {"gof(8,2) pvalue_centered", gof_a.pvalue_centered,
         std::pow(1 + 10 * eps_a / 8, 4) * std::exp(-5 * eps_a)},
        {"gof(90,10) statistic", gof_b.statistic, d_b},
        {"gof(90,10) pvalue", gof_b.pvalue, 101 * std::exp(-100 * d_b)},
        {"exact n=2 atom", two.atoms().back().value, ln2},
        {"exact n=2 mean", mo.mean, ln2 / 2},
        {"exact n=2 variance", mo.variance, ln2 * ln2 / 4},
        {"exact n=2 cgf(0.5)", exact_centered_log_mgf(two, 0.5),
         std::log(0.5L + 0.5L * std::exp(0.5L * ln2)) - 0.25L * ln2},
        {"exact n=2 cgf(1)", exact_centered_log_mgf(two, 1.0), std::log(1.5L) - ln2 / 2},
        {"phi-part atom n=1 p=0.5", binomial_phi_part_law(1, 0.5, Part::Plus).max_value(), ln2 - 0.5L},
    };
    Outcome out;
    int bad = 0;
    double worst = 0.0;
    for (const auto& g : goldens) {
        const auto rel = static_cast<double>(std::abs((g.got - g.expected) / g.expected));
        worst = std::max(worst, rel);
        if (!(rel <= 1e-9)) {
            ++bad;
            out.detail += fmt(" [%s: got %.17g want %.17Lg]", g.name, g.got, g.expected);
        }
    }
    out.pass = bad == 0;
    out.detail = fmt("%zu values, %d off, worst rel err %.2e", goldens.size(), bad, worst) + out.detail;
    return out;
}

ExactSweep full_sweep() {
    ExactSweep s;
    s.min_n = 1;
    s.max_n = 12;
    s.ks = {2, 3};
    s.t_points = 50;
    s.eps_points = 50;
    s.eps_max = 3.0;
    s.moment_orders = {1, 2, 3};
    s.threads = 1;
    return s;
}

Outcome from_report(const CertificationReport& r) { return {r.passed(), summary(r)}; }

Outcome mgf_certification() {
    const auto s = full_sweep();
    for (auto k : s.ks) {
        if (default_distributions(k).size() < 5) return {false, "fewer than 5 distributions for a k"};
    }
    return from_report(certify_mgf(s));
}

Outcome tail_certification() { return from_report(certify_tails(full_sweep())); }

Outcome moment_certification() { return from_report(certify_moments(full_sweep())); }

Outcome dominance_certification() {
    DominanceSweep s;
    s.max_n = 200;
    s.threads = 1;
    const auto r = certify_dominance(s);
    const double w1 = binomial_domination_margin(1, 0.5, Part::Plus);
    const double w2 = binomial_domination_margin(2, 0.5, Part::Plus);
    const bool witnesses = std::abs(w1) <= 1e-15 && std::abs(w2) <= 1e-15;
    return {r.passed() && witnesses, summary(r) + fmt("; witnesses %.1e, %.1e", w1, w2)};
}

Outcome reduction_certification() {
    ReductionSweep s;
    s.max_n = 8;
    s.ks = {2, 3};
    s.t_points = 20;
    s.threads = 1;
    return from_report(certify_reduction(s));
}

Outcome representation_certification() { return from_report(certify_representation(full_sweep())); }

Outcome envelope_certification() {
    DominanceSweep s;
    s.max_n = 200;
    s.threads = 1;
    return from_report(certify_envelope(s));
}

Outcome monte_carlo() {
    constexpr std::uint64_t kSeed = 20240611;
    std::vector<McReport> reports;
    std::vector<double> times;
    for (unsigned workers : {1u, 4u, 8u}) {
        auto sweep = default_mc_sweep(kSeed);
        sweep.trials = 1'000'000;
        sweep.options.threads = workers;
        const auto start = Clock::now();
        reports.push_back(verify_bounds_mc(sweep));
        times.push_back(seconds_since(start));
    }
    const auto same = [](const McReport& a, const McReport& b) {
        if (a.checks.size() != b.checks.size() || a.violations != b.violations) return false;
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            const auto &x = a.checks[i], &y = b.checks[i];
            if (x.estimate.point != y.estimate.point || x.estimate.ci_low != y.estimate.ci_low ||
                x.estimate.ci_high != y.estimate.ci_high || x.bound != y.bound || x.threshold != y.threshold) {
                return false;
            }
        }
        return true;
    };
    const bool reproducible = same(reports[0], reports[1]) && same(reports[0], reports[2]);
    const auto& r = reports[0];
    double min_margin = INFINITY;
    for (const auto& c : r.checks) min_margin = std::min(min_margin, c.margin);
    const double slowest = std::max({times[0], times[1], times[2]});
    Outcome out;
    out.pass = r.passed() && r.checks.size() == 10 && reproducible && slowest < 300.0;
    out.detail = fmt("%zu checks, %zu violations, min margin %.3g; identical at 1/4/8 workers: %s; "
                     "runs %.1f/%.1f/%.1f s",
                     r.checks.size(), r.violations, min_margin, reproducible ? "yes" : "no", times[0], times[1],
                     times[2]);
    return out;
}

Outcome inversion_round_trips() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> ns(1, 5000), ks(1, 100);
    std::uniform_real_distribution<double> log_delta(std::log(1e-12), std::log(0.5));
    int bad_radius = 0;
    for (int i = 0; i < 100; ++i) {
        const auto n = ns(rng), k = ks(rng);
        const double delta = std::exp(log_delta(rng));
        const auto r = confidence_radius(n, k, delta, Side::Upper);
        const double back = upper_tail_bound(n, k, r.radius).primary;
        if (!(back <= delta && back >= delta * (1.0 - 1e-6))) ++bad_radius;
    }
    int bad_n = 0, cases = 0;
    for (std::int64_t k : {1, 2, 3, 5, 10}) {
        for (double eps : {0.05, 0.2}) {
            for (double delta : {0.1, 0.01}) {
                ++cases;
                const auto n = sample_size(k, eps, delta, Side::Upper);
                std::int64_t scan = 1;
                while (upper_tail_bound(scan, k, eps).primary > delta) ++scan;
                if (n != scan) ++bad_n;
            }
        }
    }
    return {bad_radius == 0 && bad_n == 0,
            fmt("radius: 100 triples, %d outside [delta(1-1e-6), delta]; sample size: %d cases, %d not minimal",
                bad_radius, cases, bad_n)};
}

Outcome pvalue_validity() {
    const std::vector<ProbabilityVector> ps = {
        ProbabilityVector::make({0.5, 0.5}),
        ProbabilityVector::make({0.3, 0.7}),
        ProbabilityVector::make({0.1, 0.9}),
        ProbabilityVector::uniform(3),
        ProbabilityVector::make({0.2, 0.3, 0.5}),
        ProbabilityVector::make({0.1, 0.2, 0.7}),
    };
    const std::vector<double> alphas = {0.01, 0.05, 0.1, 0.5};
    int checks = 0, bad = 0;
    double worst_ratio = 0.0;
    for (std::int64_t n : {5, 10}) {
        for (const auto& p : ps) {
            std::vector<double> reject(alphas.size(), 0.0);
            for_each_composition(n, p, [&](std::span<const std::int64_t> counts, double prob) {
                const auto x = CountVector::make({counts.begin(), counts.end()});
                const double pv = gof_pvalue(x, p).pvalue;
                for (std::size_t a = 0; a < alphas.size(); ++a) {
                    if (pv <= alphas[a]) reject[a] += prob;
                }
            });
            for (std::size_t a = 0; a < alphas.size(); ++a) {
                ++checks;
                worst_ratio = std::max(worst_ratio, reject[a] / alphas[a]);
                if (reject[a] > alphas[a]) ++bad;
            }
        }
    }
    return {bad == 0, fmt("%d checks, %d violations, max P(p <= a)/a = %.3g", checks, bad, worst_ratio)};
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "closed-form goldens", 1.0, closed_form_goldens},
        {2, "mgf bound vs exact log-MGF", 120.0, mgf_certification},
        {3, "tail bounds vs exact tails", 120.0, tail_certification},
        {4, "moment, variance and mean bounds", 0.0, moment_certification},
        {5, "exponential domination", 30.0, dominance_certification},
        {6, "binomial product reduction", 0.0, reduction_certification},
        {7, "survival-integral MGF representation", 0.0, representation_certification},
        {8, "subgamma envelope", 0.0, envelope_certification},
        {9, "Monte Carlo consistency", 0.0, monte_carlo},
        {10, "inversion round trips", 0.0, inversion_round_trips},
        {11, "p-value super-uniformity", 0.0, pvalue_validity},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = seconds_since(start);
        if (c.limit_seconds > 0.0 && secs >= c.limit_seconds) {
            o.pass = false;
            o.detail += fmt("; over the %.0f s limit", c.limit_seconds);
        }
        if (!o.pass) ++failures;
        std::printf("%s  criterion %2d  %-38s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
