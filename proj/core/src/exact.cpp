#include "relent/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relent/errors.hpp"
#include "relent/numeric.hpp"

namespace relent {

namespace {

void require_binomial_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("binomial p must lie in (0, 1)");
}

template <class ValueFn>
ExactDistribution binomial_law(std::int64_t n, double p, ValueFn value) {
    if (n < 1) throw DomainError("n must be a positive integer");
    require_binomial_p(p);
    const LogFactorialTable lf(n);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t x = 0; x <= n; ++x) {
        const double log_pmf = lf(n) - lf(x) - lf(n - x) + static_cast<double>(x) * lp +
                               static_cast<double>(n - x) * lq;
        atoms.push_back({value(x), std::exp(log_pmf)});
    }
    return ExactDistribution::from_atoms(std::move(atoms), n, {p, 1.0 - p});
}

// Survival probabilities S_j = P(Z >= a_j), summed from the top.
std::vector<double> survival(std::span<const Atom> atoms) {
    std::vector<double> s(atoms.size());
    CompensatedSum acc;
    for (std::size_t j = atoms.size(); j-- > 0;) {
        acc.add(atoms[j].prob);
        s[j] = acc.value();
    }
    return s;
}

double mean_of(std::span<const Atom> atoms) {
    CompensatedSum s;
    for (const auto& a : atoms) s.add(a.value * a.prob);
    return s.value();
}

}  // namespace

ExactDistribution ExactDistribution::from_atoms(std::vector<Atom> atoms, std::int64_t n,
                                                std::vector<double> p) {
    std::erase_if(atoms, [](const Atom& a) { return !(a.prob > 0.0); });
    if (atoms.empty()) throw DomainError("distribution has no atoms of positive probability");
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        return a.value < b.value || (a.value == b.value && a.prob < b.prob);
    });
    ExactDistribution d;
    d.n_ = n;
    d.p_ = std::move(p);
    std::size_t i = 0;
    while (i < atoms.size()) {
        const double head = atoms[i].value;
        CompensatedSum prob;
        std::size_t j = i;
        for (; j < atoms.size() && atoms[j].value - head <= kAtomMergeTolerance; ++j) {
            prob.add(atoms[j].prob);
        }
        d.atoms_.push_back({head, prob.value()});
        i = j;
    }
    return d;
}

double ExactDistribution::total_probability() const {
    CompensatedSum s;
    for (const auto& a : atoms_) s.add(a.prob);
    return s.value();
}

double composition_count(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 1) throw DomainError("composition count needs n >= 0, k >= 1");
    // C(n + j, j) built up exactly while it fits in a double mantissa.
    long double c = 1.0L;
    for (std::int64_t j = 1; j < k; ++j) {
        c = c * static_cast<long double>(n + j) / static_cast<long double>(j);
    }
    return static_cast<double>(std::round(c));
}

void for_each_composition(std::int64_t n, const ProbabilityVector& p,
                          const std::function<void(std::span<const std::int64_t>, double)>& visit,
                          double budget) {
    if (n < 1) throw DomainError("n must be a positive integer");
    const std::int64_t k = p.k();
    const double count = composition_count(n, k);
    if (count > budget) {
        throw ResourceError("enumeration needs " + std::to_string(count) +
                                " compositions, over the budget of " + std::to_string(budget),
                            count);
    }
    const LogFactorialTable lf(n);
    std::vector<double> log_p(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < log_p.size(); ++i) {
        log_p[i] = p[i] > 0.0 ? std::log(p[i]) : -std::numeric_limits<double>::infinity();
    }

    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    const std::size_t free_digits = counts.size() - 1;
    std::int64_t used = 0;  // sum of the free digits
    for (;;) {
        counts.back() = n - used;
        double log_pmf = lf(n);
        bool possible = true;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            const auto x = counts[i];
            if (x == 0) continue;
            if (p[i] == 0.0) {
                possible = false;
                break;
            }
            log_pmf += static_cast<double>(x) * log_p[i] - lf(x);
        }
        if (possible) visit(counts, std::exp(log_pmf));

        std::size_t i = 0;
        for (; i < free_digits; ++i) {
            if (used < n) {
                ++counts[i];
                ++used;
                break;
            }
            used -= counts[i];
            counts[i] = 0;
        }
        if (i == free_digits) break;
    }
}

ExactDistribution enumerate_statistic(std::int64_t n, const ProbabilityVector& p, double budget) {
    std::vector<Atom> atoms;
    const auto probs = p.probs();
    for_each_composition(
        n, p,
        [&](std::span<const std::int64_t> counts, double prob) {
            atoms.push_back({empirical_kl(counts, n, probs), prob});
        },
        budget);
    return ExactDistribution::from_atoms(std::move(atoms), n, {probs.begin(), probs.end()});
}

Moments exact_moments(const ExactDistribution& d, std::int64_t m) {
    if (m < 1) throw DomainError("moment order m must be >= 1");
    Moments out;
    out.mean = mean_of(d.atoms());
    CompensatedSum var;
    CompensatedSum central;
    const int order = static_cast<int>(2 * m);
    for (const auto& a : d.atoms()) {
        const double c = a.value - out.mean;
        var.add(a.prob * c * c);
        central.add(a.prob * std::pow(c, order));
    }
    out.variance = var.value();
    out.central_moment = central.value();
    return out;
}

double exact_tail(const ExactDistribution& d, double threshold, Side side) {
    CompensatedSum s;
    switch (side) {
        case Side::Upper:
            for (const auto& a : d.atoms()) {
                if (a.value >= threshold) s.add(a.prob);
            }
            break;
        case Side::Lower:
            for (const auto& a : d.atoms()) {
                if (a.value <= threshold) s.add(a.prob);
            }
            break;
        case Side::TwoSided:
            throw DomainError("exact_tail takes an upper or lower side");
    }
    return std::clamp(s.value(), 0.0, 1.0);
}

double exact_centered_log_mgf(const ExactDistribution& d, double t) {
    if (t == 0.0) return 0.0;
    const double mean = mean_of(d.atoms());
    std::vector<double> terms;
    terms.reserve(d.atoms().size());
    for (const auto& a : d.atoms()) {
        terms.push_back(std::log(a.prob) + t * (a.value - mean));
    }
    return log_sum_exp(terms);
}

ExactDistribution binomial_half_kl_law(std::int64_t n, double p, Part part) {
    const double dn = static_cast<double>(n);
    return binomial_law(n, p, [&](std::int64_t x) {
        const double dx = static_cast<double>(x);
        const bool on_side = part == Part::Plus ? dx >= dn * p : dx <= dn * p;
        if (!on_side) return 0.0;
        double v = 0.0;
        if (x > 0) v += dx * std::log(dx / (dn * p));
        if (x < n) v += (dn - dx) * std::log((dn - dx) / (dn * (1.0 - p)));
        return std::max(v, 0.0);
    });
}

ExactDistribution binomial_phi_part_law(std::int64_t n, double p, Part part) {
    const double np = static_cast<double>(n) * p;
    return binomial_law(n, p, [&](std::int64_t x) {
        const PhiValue v = phi_parts(static_cast<double>(x) / np);
        return np * (part == Part::Plus ? v.plus : v.minus);
    });
}

double exponential_domination_margin(const ExactDistribution& d) {
    const auto atoms = d.atoms();
    const auto s = survival(atoms);
    double margin = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        margin = std::max(margin, s[j] - std::exp(-atoms[j].value));
    }
    return margin;
}

double binomial_domination_margin(std::int64_t n, double p, Part part) {
    return exponential_domination_margin(binomial_half_kl_law(n, p, part));
}

double phi_part_domination_margin(std::int64_t n, double p, Part part) {
    return exponential_domination_margin(binomial_phi_part_law(n, p, part));
}

ReductionGap reduction_gap(std::int64_t n, const ProbabilityVector& p, double t, double budget) {
    std::vector<double> support;
    for (double pi : p.probs()) {
        if (pi > 0.0) support.push_back(pi);
    }
    const auto reduced = ProbabilityVector::make(support, Normalization::Renormalize);
    const ExactDistribution joint = enumerate_statistic(n, reduced, budget);

    ReductionGap out;
    out.log_lhs = exact_centered_log_mgf(joint, t);
    CompensatedSum log_rhs;
    for (double pi : reduced.probs()) {
        if (pi >= 1.0) continue;  // X_i = n surely; both factors are 1
        const double np = static_cast<double>(n) * pi;
        for (Part part : {Part::Plus, Part::Minus}) {
            // p_i phi(X/(n p_i)) is the np phi-part law scaled by 1/n.
            const auto law = binomial_law(n, pi, [&](std::int64_t x) {
                const PhiValue v = phi_parts(static_cast<double>(x) / np);
                return pi * (part == Part::Plus ? v.plus : v.minus);
            });
            log_rhs.add(0.5 * exact_centered_log_mgf(law, 2.0 * t));
        }
    }
    out.log_rhs = log_rhs.value();
    out.lhs = std::exp(out.log_lhs);
    out.rhs = std::exp(out.log_rhs);
    return out;
}

double mgf_representation_gap(const ExactDistribution& d, double t) {
    const auto atoms = d.atoms();
    if (atoms.front().value < 0.0) throw DomainError("representation needs a non-negative variable");
    const double direct = exact_centered_log_mgf(d, t);
    if (t == 0.0) return -direct;
    const double mean = mean_of(atoms);
    const auto s = survival(atoms);
    CompensatedSum integral;
    double left = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        const double right = atoms[j].value;
        if (right > left) {
            // int_left^right t (e^{tx} - 1) dx
            const double width = right - left;
            const double piece = std::exp(t * left) * std::expm1(t * width) - t * width;
            integral.add(s[j] * piece);
        }
        left = right;
    }
    const double represented = std::log1p(t * mean + integral.value()) - t * mean;
    return represented - direct;
}

}  // namespace relent
