#include "relent/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "relent/bounds.hpp"
#include "relent/errors.hpp"
#include "relent/exact.hpp"

namespace relent {

namespace {

std::string describe(std::int64_t n, std::span<const double> p) {
    std::ostringstream os;
    os.precision(6);
    os << "n=" << n << " p=(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

std::string with_param(const std::string& base, const char* name, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s=%.17g", name, value);
    return base + buf;
}

class Recorder {
public:
    explicit Recorder(std::string name) { report_.name = std::move(name); }

    // Records lhs <= rhs + tol. `where` is only invoked on a violation.
    template <class Where>
    void check(const char* what, double lhs, double rhs, double tol, Where&& where) {
        ++report_.checks;
        const double slack = rhs - lhs;
        if (report_.checks == 1 || slack < report_.worst_slack) report_.worst_slack = slack;
        if (!(lhs <= rhs + tol)) report_.violations.push_back({what, where(), lhs, rhs});
    }

    CertificationReport take() { return std::move(report_); }

private:
    CertificationReport report_;
};

struct Cell {
    std::int64_t n;
    const ProbabilityVector* p;
};

std::vector<ProbabilityVector> sweep_distributions(const std::vector<std::int64_t>& ks,
                                                   const std::vector<ProbabilityVector>& given) {
    if (!given.empty()) return given;
    std::vector<ProbabilityVector> out;
    for (auto k : ks) {
        auto ds = default_distributions(k);
        out.insert(out.end(), ds.begin(), ds.end());
    }
    return out;
}

template <class CellFn>
CertificationReport run_cells(std::string name, std::int64_t min_n, std::int64_t max_n,
                              const std::vector<ProbabilityVector>& dists, unsigned threads,
                              CellFn&& cell_fn) {
    std::vector<Cell> cells;
    for (std::int64_t n = min_n; n <= max_n; ++n) {
        for (const auto& p : dists) cells.push_back({n, &p});
    }
    std::vector<CertificationReport> parts(cells.size());
    detail::parallel_for(cells.size(), threads, [&](std::size_t i) {
        Recorder rec(name);
        cell_fn(cells[i], rec);
        parts[i] = rec.take();
    });
    CertificationReport total;
    total.name = std::move(name);
    for (auto& part : parts) total.merge(std::move(part));
    return total;
}

}  // namespace

void CertificationReport::merge(CertificationReport other) {
    if (other.checks == 0) return;
    worst_slack = checks == 0 ? other.worst_slack : std::min(worst_slack, other.worst_slack);
    checks += other.checks;
    for (auto& v : other.violations) violations.push_back(std::move(v));
}

std::vector<ProbabilityVector> default_distributions(std::int64_t k) {
    if (k < 1) throw DomainError("alphabet size must be positive");
    std::vector<ProbabilityVector> out;
    if (k == 2) {
        for (double p : {0.5, 0.3, 0.1, 0.05, 0.01}) out.push_back(ProbabilityVector::make({p, 1.0 - p}));
        return out;
    }
    if (k == 3) {
        out.push_back(ProbabilityVector::uniform(3));
        out.push_back(ProbabilityVector::make({0.2, 0.3, 0.5}));
        out.push_back(ProbabilityVector::make({0.1, 0.2, 0.7}));
        out.push_back(ProbabilityVector::make({0.05, 0.15, 0.8}));
        out.push_back(ProbabilityVector::make({0.01, 0.01, 0.98}));
        out.push_back(ProbabilityVector::make({0.0, 0.4, 0.6}));
        return out;
    }
    const auto sz = static_cast<std::size_t>(k);
    out.push_back(ProbabilityVector::uniform(k));
    if (k == 1) return out;
    std::vector<double> ramp(sz), geometric(sz), heavy(sz, 0.1 / static_cast<double>(k - 1));
    for (std::size_t i = 0; i < sz; ++i) {
        ramp[i] = static_cast<double>(i + 1);
        geometric[i] = std::pow(0.5, static_cast<double>(i));
    }
    heavy[0] = 0.9;
    std::vector<double> gap = ramp;
    gap[0] = 0.0;
    for (auto* v : {&ramp, &geometric, &heavy, &gap}) {
        out.push_back(ProbabilityVector::make(*v, Normalization::Renormalize));
    }
    return out;
}

std::vector<double> linspace(double a, double b, std::size_t points) {
    std::vector<double> out;
    if (points == 0) return out;
    if (points == 1) return {a};
    out.reserve(points);
    const double step = (b - a) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i + 1 < points; ++i) out.push_back(a + step * static_cast<double>(i));
    out.push_back(b);
    return out;
}

CertificationReport certify_mgf(const ExactSweep& sweep) {
    const auto dists = sweep_distributions(sweep.ks, sweep.distributions);
    return run_cells("mgf", sweep.min_n, sweep.max_n, dists, sweep.threads, [&](Cell c, Recorder& rec) {
        const auto d = enumerate_statistic(c.n, *c.p);
        const auto k = c.p->support_size();
        const double dn = static_cast<double>(c.n);
        for (double t : linspace(-5.0 * dn, 0.49 * dn, sweep.t_points)) {
            rec.check("centered log-MGF <= mgf_bound", exact_centered_log_mgf(d, t),
                      mgf_bound(c.n, k, t), kLogMgfTolerance,
                      [&] { return with_param(describe(c.n, c.p->probs()), "t", t); });
        }
    });
}

CertificationReport certify_tails(const ExactSweep& sweep) {
    const auto dists = sweep_distributions(sweep.ks, sweep.distributions);
    return run_cells("tail", sweep.min_n, sweep.max_n, dists, sweep.threads, [&](Cell c, Recorder& rec) {
        const auto d = enumerate_statistic(c.n, *c.p);
        const auto k = c.p->support_size();
        const double mean = exact_moments(d, 1).mean;
        for (double eps : linspace(0.0, sweep.eps_max, sweep.eps_points)) {
            const auto where = [&] { return with_param(describe(c.n, c.p->probs()), "eps", eps); };
            const auto up = upper_tail_bound(c.n, k, eps);
            const auto lo = lower_tail_bound(c.n, k, eps);
            const auto lo_sharp = sharpened_lower_tail_bound(c.n, k, eps);
            constexpr double tol = kProbabilityTolerance;
            rec.check("upper tail <= primary", exact_tail(d, mean + eps, Side::Upper), up.primary, tol, where);
            rec.check("lower tail <= primary", exact_tail(d, mean - eps, Side::Lower), lo.primary, tol, where);
            rec.check("lower tail <= sharpened", exact_tail(d, mean - eps, Side::Lower), lo_sharp.primary,
                      tol, where);
            rec.check("upper primary <= relaxed_quadratic", up.primary, up.relaxed_quadratic, tol, where);
            rec.check("upper relaxed_quadratic <= relaxed_minform", up.relaxed_quadratic,
                      up.relaxed_minform, tol, where);
            rec.check("lower primary <= relaxed", lo.primary, lo.relaxed_quadratic, tol, where);
        }
    });
}

CertificationReport certify_moments(const ExactSweep& sweep) {
    const auto dists = sweep_distributions(sweep.ks, sweep.distributions);
    return run_cells("moments", sweep.min_n, sweep.max_n, dists, sweep.threads, [&](Cell c, Recorder& rec) {
        const auto d = enumerate_statistic(c.n, *c.p);
        const auto k = c.p->support_size();
        const auto where = [&] { return describe(c.n, c.p->probs()); };
        for (auto m : sweep.moment_orders) {
            const auto mo = exact_moments(d, m);
            rec.check("central moment <= moment_bound", mo.central_moment, moment_bound(c.n, k, m),
                      kProbabilityTolerance, [&] { return with_param(where(), "m", static_cast<double>(m)); });
        }
        const auto mo = exact_moments(d, 1);
        rec.check("variance <= 8k/n^2", mo.variance, variance_bound(c.n, k), kProbabilityTolerance, where);
        rec.check("mean <= ln(1+(k-1)/n)", mo.mean, mean_upper_bound(c.n, k), kProbabilityTolerance, where);
    });
}

CertificationReport certify_representation(const ExactSweep& sweep) {
    const auto dists = sweep_distributions(sweep.ks, sweep.distributions);
    return run_cells("representation", sweep.min_n, sweep.max_n, dists, sweep.threads,
                     [&](Cell c, Recorder& rec) {
                         const auto d = enumerate_statistic(c.n, *c.p);
                         const double dn = static_cast<double>(c.n);
                         for (double t : {-2.0, -0.5, 0.3, 0.9 * std::min(1.0, dn / 2.0)}) {
                             rec.check("|representation gap|", std::abs(mgf_representation_gap(d, t)), 0.0,
                                       kLogMgfTolerance,
                                       [&] { return with_param(describe(c.n, c.p->probs()), "t", t); });
                         }
                     });
}

CertificationReport certify_exact(const ExactSweep& sweep) {
    CertificationReport total;
    total.name = "exact";
    total.merge(certify_mgf(sweep));
    total.merge(certify_tails(sweep));
    total.merge(certify_moments(sweep));
    total.merge(certify_representation(sweep));
    return total;
}

std::vector<double> default_binomial_ps() {
    std::vector<double> ps;
    for (int i = 0; i <= 32; ++i) ps.push_back((2.0 + 3.0 * i) / 100.0);
    return ps;
}

namespace {

struct BinomialCell {
    std::int64_t n;
    double p;
};

template <class CellFn>
CertificationReport run_binomial_cells(std::string name, const DominanceSweep& sweep, CellFn&& cell_fn) {
    const auto ps = sweep.ps.empty() ? default_binomial_ps() : sweep.ps;
    std::vector<BinomialCell> cells;
    for (std::int64_t n = 1; n <= sweep.max_n; ++n) {
        for (double p : ps) cells.push_back({n, p});
    }
    std::vector<CertificationReport> parts(cells.size());
    detail::parallel_for(cells.size(), sweep.threads, [&](std::size_t i) {
        Recorder rec(name);
        cell_fn(cells[i], rec);
        parts[i] = rec.take();
    });
    CertificationReport total;
    total.name = std::move(name);
    for (auto& part : parts) total.merge(std::move(part));
    return total;
}

std::string binomial_where(BinomialCell c, const char* law) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s n=%lld p=%.17g", law, static_cast<long long>(c.n), c.p);
    return buf;
}

struct NamedLaw {
    const char* name;
    ExactDistribution law;
};

std::vector<NamedLaw> dominated_laws(BinomialCell c) {
    return {
        {"Z+", binomial_half_kl_law(c.n, c.p, Part::Plus)},
        {"Z-", binomial_half_kl_law(c.n, c.p, Part::Minus)},
        {"np*phi+", binomial_phi_part_law(c.n, c.p, Part::Plus)},
        {"np*phi-", binomial_phi_part_law(c.n, c.p, Part::Minus)},
    };
}

}  // namespace

CertificationReport certify_dominance(const DominanceSweep& sweep) {
    return run_binomial_cells("dominance", sweep, [&](BinomialCell c, Recorder& rec) {
        for (const auto& [name, law] : dominated_laws(c)) {
            rec.check("domination margin <= 0", exponential_domination_margin(law), 0.0,
                      kProbabilityTolerance, [&, name = name] { return binomial_where(c, name); });
        }
    });
}

CertificationReport certify_envelope(const DominanceSweep& sweep) {
    const auto ts = linspace(-20.0, 0.99, sweep.t_points);
    auto report = run_binomial_cells("envelope", sweep, [&](BinomialCell c, Recorder& rec) {
        for (const auto& [name, law] : dominated_laws(c)) {
            for (double t : ts) {
                rec.check("centered log-MGF <= B(t)", exact_centered_log_mgf(law, t), subgamma_envelope(t),
                          kLogMgfTolerance, [&, name = name] { return with_param(binomial_where(c, name), "t", t); });
            }
        }
    });
    Recorder rec("envelope");
    for (double t : ts) {
        const auto b = subgamma_envelope_parts(t);
        const auto where = [&] { return with_param("B", "t", t); };
        rec.check("B(t) <= t^2/(1-t)", b.value, b.quadratic, kProbabilityTolerance, where);
        rec.check("B(t) <= log form", b.value, b.log_form, kProbabilityTolerance, where);
        rec.check("B(t) <= 2 ln(e^-t/(1-t))", b.value, b.gamma, kProbabilityTolerance, where);
    }
    report.merge(rec.take());
    return report;
}

CertificationReport certify_reduction(const ReductionSweep& sweep) {
    const auto dists = sweep_distributions(sweep.ks, sweep.distributions);
    return run_cells("reduction", 1, sweep.max_n, dists, sweep.threads, [&](Cell c, Recorder& rec) {
        const double dn = static_cast<double>(c.n);
        for (double t : linspace(-dn, dn / 2.0, sweep.t_points)) {
            const auto gap = reduction_gap(c.n, *c.p, t);
            // Compared in log space; the slack is relative on the MGF scale.
            rec.check("ln lhs <= ln rhs", gap.log_lhs, gap.log_rhs, kProbabilityTolerance,
                      [&] { return with_param(describe(c.n, c.p->probs()), "t", t); });
        }
    });
}

}  // namespace relent
