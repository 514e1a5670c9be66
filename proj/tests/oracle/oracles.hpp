#pragma once

// Test-only reference computations. Nothing here calls into the library's
// evaluation paths; they re-derive quantities by brute force or by a
// different algebraic route.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace relent::oracle {

/// Golden-section minimisation of a unimodal f on [a, b].
inline double golden_section_min(const std::function<double(double)>& f, double a, double b,
                                 int iterations = 300) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return std::min(fc, fd);
}

/// All compositions of n into k parts, by recursion.
inline void compositions(int n, int k, std::vector<int>& prefix,
                         const std::function<void(const std::vector<int>&)>& visit) {
    if (k == 1) {
        prefix.push_back(n);
        visit(prefix);
        prefix.pop_back();
        return;
    }
    for (int x = 0; x <= n; ++x) {
        prefix.push_back(x);
        compositions(n - x, k - 1, prefix, visit);
        prefix.pop_back();
    }
}

/// Multinomial pmf via long-double products (no log tables).
inline long double multinomial_pmf(const std::vector<int>& x, const std::vector<double>& p) {
    int n = 0;
    for (int xi : x) n += xi;
    long double coef = 1.0L;
    int placed = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (int j = 1; j <= x[i]; ++j) {
            ++placed;
            coef = coef * placed / j;
        }
    }
    long double prob = coef;
    for (std::size_t i = 0; i < x.size(); ++i) prob *= std::pow(static_cast<long double>(p[i]), x[i]);
    return prob;
}

/// Statistic written as sum p_i phi(q_i/p_i) in long double.
inline long double statistic_phi_route(const std::vector<int>& x, const std::vector<double>& p) {
    int n = 0;
    for (int xi : x) n += xi;
    long double s = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (p[i] == 0.0) continue;
        const long double r = static_cast<long double>(x[i]) / (n * static_cast<long double>(p[i]));
        const long double ph = r == 0.0L ? 1.0L : r * std::log(r) - r + 1.0L;
        s += p[i] * ph;
    }
    return s;
}

struct BruteLaw {
    std::vector<long double> values;
    std::vector<long double> probs;

    long double mean() const {
        long double m = 0.0L;
        for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
        return m;
    }
    long double centered_mgf(long double t) const {
        const long double m = mean();
        long double s = 0.0L;
        for (std::size_t i = 0; i < values.size(); ++i) s += probs[i] * std::exp(t * (values[i] - m));
        return s;
    }
};

/// Per-composition (unmerged) law of the statistic.
inline BruteLaw brute_statistic_law(int n, const std::vector<double>& p) {
    BruteLaw law;
    std::vector<int> prefix;
    compositions(n, static_cast<int>(p.size()), prefix, [&](const std::vector<int>& x) {
        const long double pr = multinomial_pmf(x, p);
        if (pr == 0.0L) return;
        law.values.push_back(statistic_phi_route(x, p));
        law.probs.push_back(pr);
    });
    return law;
}

}  // namespace relent::oracle
