#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "relent/bounds.hpp"
#include "relent/certify.hpp"
#include "relent/divergence.hpp"
#include "relent/errors.hpp"
#include "relent/inversion.hpp"
#include "relent/montecarlo.hpp"
#include "report.hpp"

#ifndef RELENT_VERSION
#define RELENT_VERSION "0.0.0"
#endif

namespace relent::cli {

namespace {

constexpr std::size_t kMaxListedViolations = 20;

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<double> read_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream cell(line.substr(start));
        double v = 0.0;
        if (!(cell >> v)) throw DomainError("not a number in " + path + ": " + line);
        values.push_back(v);
    }
    return values;
}

Side side_from(const std::string& text) {
    try {
        return parse_side(text);
    } catch (const std::exception&) {
        throw DomainError("side must be upper, lower or two_sided");
    }
}

Json tail_json(const TailBoundReport& r) {
    return Json{{"primary", r.primary},
                {"relaxed_quadratic", r.relaxed_quadratic},
                {"relaxed_minform", r.relaxed_minform},
                {"side", std::string(to_string(r.side))}};
}

void add_certification(RunReport& report, const std::vector<CertificationReport>& parts) {
    report.columns = {"check", "checks", "violations", "worst_slack"};
    std::size_t total = 0, violations = 0;
    Json listed = Json::array();
    for (const auto& part : parts) {
        report.rows.push_back({part.name, part.checks, part.violations.size(), part.worst_slack});
        total += part.checks;
        violations += part.violations.size();
        for (const auto& v : part.violations) {
            if (listed.size() >= kMaxListedViolations) break;
            listed.push_back({{"check", v.check}, {"where", v.where}, {"lhs", v.lhs}, {"rhs", v.rhs}});
        }
    }
    report.outputs["passed"] = violations == 0;
    report.outputs["checks"] = total;
    report.outputs["violations"] = violations;
    report.outputs["listed_violations"] = std::move(listed);
}

// Shared distribution flags: --p, --p-file, --renormalize.
struct DistributionFlags {
    std::vector<double> p;
    std::string p_file;
    bool renormalize = false;

    void attach(CLI::App* cmd) {
        auto* inline_p = cmd->add_option("--p", p, "Probabilities, comma separated")->delimiter(',');
        auto* file = cmd->add_option("--p-file", p_file, "File with one probability per line");
        inline_p->excludes(file);
        cmd->add_flag("--renormalize", renormalize, "Rescale probabilities to sum to 1");
    }
    bool given() const { return !p.empty() || !p_file.empty(); }
    ProbabilityVector load() const {
        auto values = p_file.empty() ? p : read_column(p_file);
        return ProbabilityVector::make(std::move(values),
                                       renormalize ? Normalization::Renormalize : Normalization::Strict);
    }
};

struct Params {
    std::int64_t n = 0;
    std::int64_t k = 0;
    double t = 0.0;
    double eps = 0.0;
    double delta = 0.05;
    std::int64_t m = 1;
    std::optional<double> q;
    std::string side = "upper";
    bool experimental = false;

    std::string format;  // empty: json, or csv for curve
    unsigned threads = default_threads();

    std::vector<std::int64_t> counts;
    std::string counts_file;
    DistributionFlags dist;

    std::int64_t min_n = 1;
    std::int64_t max_n = 0;
    std::vector<std::int64_t> ks;
    std::vector<double> ps;
    std::size_t t_points = 0;
    std::size_t eps_points = 50;
    double eps_max = 3.0;

    std::uint64_t seed = 0;
    std::int64_t trials = 1'000'000;
    std::string kind = "tail";
    std::vector<double> params;
    double confidence = kDefaultConfidence;
    int bootstrap = kDefaultBootstrapResamples;
    double bound_scale = 1.0;

    std::string quantity = "upper";
    double from = 0.0;
    double to = 1.0;
    std::size_t points = 50;
};

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err, bool color) : out_(out), err_(err), color_(color) {}

    int run(const std::vector<std::string>& args);

private:
    void build();
    void add_format(CLI::App* cmd);
    void add_threads(CLI::App* cmd) { cmd->add_option("--threads", p_.threads, "Worker threads")->check(CLI::PositiveNumber); }
    void on(CLI::App* cmd, std::function<RunReport()> fn) {
        cmd->callback([this, fn = std::move(fn)] { report_ = fn(); });
    }

    RunReport bound_mgf();
    RunReport bound_tail();
    RunReport bound_moment();
    RunReport bound_mean();
    RunReport bound_types();
    RunReport bound_conjecture();
    RunReport envelope();
    RunReport invert_radius();
    RunReport invert_samplesize();
    RunReport test_gof();
    RunReport verify_exact();
    RunReport verify_dominance();
    RunReport verify_reduction();
    RunReport verify_mc();
    RunReport curve();

    void diagnose(const std::string& message);

    std::ostream& out_;
    std::ostream& err_;
    bool color_;
    CLI::App app_{"Concentration bounds for the empirical relative entropy of multinomial samples", "relent"};
    Params p_;
    std::optional<RunReport> report_;
};

void Runner::add_format(CLI::App* cmd) {
    cmd->add_option("--format", p_.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void Runner::build() {
    app_.require_subcommand(1);
    app_.set_version_flag("--version", RELENT_VERSION);

    auto* bound = app_.add_subcommand("bound", "Evaluate a closed-form bound");
    bound->require_subcommand(1);

    auto* mgf = bound->add_subcommand("mgf", "Bound on ln E exp(t (D - E D))");
    mgf->add_option("--n", p_.n, "Sample size")->required();
    mgf->add_option("--k", p_.k, "Alphabet size")->required();
    mgf->add_option("--t", p_.t, "MGF argument, t < n/2")->required();
    mgf->add_flag("--experimental", p_.experimental, "Also report the conjectured shape k-1 bound");
    add_format(mgf);
    on(mgf, [this] { return bound_mgf(); });

    auto* tail = bound->add_subcommand("tail", "Deviation bound on |D - E D| >= eps");
    tail->add_option("--n", p_.n)->required();
    tail->add_option("--k", p_.k)->required();
    tail->add_option("--eps", p_.eps)->required();
    tail->add_option("--side", p_.side, "upper, lower or two_sided");
    add_format(tail);
    on(tail, [this] { return bound_tail(); });

    auto* moment = bound->add_subcommand("moment", "Central moment, variance and q-norm bounds");
    moment->add_option("--n", p_.n)->required();
    moment->add_option("--k", p_.k)->required();
    moment->add_option("--m", p_.m, "Moment order; bounds E (D - E D)^(2m)");
    moment->add_option("--q", p_.q, "Norm order q >= 1");
    add_format(moment);
    on(moment, [this] { return bound_moment(); });

    auto* mean = bound->add_subcommand("mean", "Bound on E D");
    mean->add_option("--n", p_.n)->required();
    mean->add_option("--k", p_.k)->required();
    add_format(mean);
    on(mean, [this] { return bound_mean(); });

    auto* types = bound->add_subcommand("types", "Method-of-types tail bound");
    types->add_option("--n", p_.n)->required();
    types->add_option("--k", p_.k)->required();
    types->add_option("--eps", p_.eps)->required();
    add_format(types);
    on(types, [this] { return bound_types(); });

    auto* conj = bound->add_subcommand("conjecture", "Two-sided bound with c1 = 2, c2 = 1/48");
    conj->add_option("--n", p_.n)->required();
    conj->add_option("--k", p_.k)->required();
    conj->add_option("--eps", p_.eps)->required();
    add_format(conj);
    on(conj, [this] { return bound_conjecture(); });

    auto* env = app_.add_subcommand("envelope", "Subgamma envelope B(t) and its relaxations");
    env->add_option("--t", p_.t, "t < 1")->required();
    add_format(env);
    on(env, [this] { return envelope(); });

    auto* invert = app_.add_subcommand("invert", "Invert a tail bound");
    invert->require_subcommand(1);
    auto* radius = invert->add_subcommand("radius", "Smallest eps with bound <= delta");
    radius->add_option("--n", p_.n)->required();
    radius->add_option("--k", p_.k)->required();
    radius->add_option("--delta", p_.delta)->required();
    radius->add_option("--side", p_.side);
    add_format(radius);
    on(radius, [this] { return invert_radius(); });
    auto* samples = invert->add_subcommand("samplesize", "Smallest n with bound <= delta");
    samples->add_option("--k", p_.k)->required();
    samples->add_option("--eps", p_.eps)->required();
    samples->add_option("--delta", p_.delta)->required();
    samples->add_option("--side", p_.side);
    add_format(samples);
    on(samples, [this] { return invert_samplesize(); });

    auto* test = app_.add_subcommand("test", "Hypothesis tests");
    test->require_subcommand(1);
    auto* gof = test->add_subcommand("gof", "Finite-sample goodness-of-fit p-value");
    auto* counts = gof->add_option("--counts", p_.counts, "Observed counts, comma separated")->delimiter(',');
    auto* counts_file = gof->add_option("--counts-file", p_.counts_file, "File with one count per line");
    counts->excludes(counts_file);
    p_.dist.attach(gof);
    add_format(gof);
    on(gof, [this] { return test_gof(); });

    auto* verify = app_.add_subcommand("verify", "Certify the bounds numerically");
    verify->require_subcommand(1);

    auto* exact = verify->add_subcommand("exact", "Exhaustive enumeration sweep");
    exact->add_option("--min-n", p_.min_n);
    exact->add_option("--max-n", p_.max_n, "Largest n (default 12)");
    exact->add_option("--k", p_.ks, "Alphabet sizes (default 2,3)")->delimiter(',');
    exact->add_option("--t-points", p_.t_points, "t grid size (default 50)");
    exact->add_option("--eps-points", p_.eps_points);
    exact->add_option("--eps-max", p_.eps_max);
    p_.dist.attach(exact);
    add_threads(exact);
    add_format(exact);
    on(exact, [this] { return verify_exact(); });

    auto* dominance = verify->add_subcommand("dominance", "Exponential domination and envelope sweep");
    dominance->add_option("--max-n", p_.max_n, "Largest n (default 200)");
    dominance->add_option("--ps", p_.ps, "Binomial p values (default 0.02, 0.05, ..., 0.98)")->delimiter(',');
    dominance->add_option("--t-points", p_.t_points);
    add_threads(dominance);
    add_format(dominance);
    on(dominance, [this] { return verify_dominance(); });

    auto* reduction = verify->add_subcommand("reduction", "Multinomial to binomial product reduction");
    reduction->add_option("--max-n", p_.max_n, "Largest n (default 8)");
    reduction->add_option("--k", p_.ks)->delimiter(',');
    reduction->add_option("--t-points", p_.t_points);
    p_.dist.attach(reduction);
    add_threads(reduction);
    add_format(reduction);
    on(reduction, [this] { return verify_reduction(); });

    auto* mc = verify->add_subcommand("mc", "Monte Carlo check against the closed forms");
    mc->add_option("--seed", p_.seed, "Master seed")->required();
    mc->add_option("--n", p_.n, "Sample size (default sweep: n = 1000, uniform k = 100)");
    mc->add_option("--k", p_.k, "Uniform alphabet size, unless --p is given");
    p_.dist.attach(mc);
    mc->add_option("--kind", p_.kind, "tail or mgf")->check(CLI::IsMember({"tail", "mgf"}));
    mc->add_option("--params", p_.params, "eps values (tail) or t values (mgf)")->delimiter(',');
    mc->add_option("--trials", p_.trials)->check(CLI::PositiveNumber);
    mc->add_option("--confidence", p_.confidence);
    mc->add_option("--bootstrap", p_.bootstrap, "Bootstrap resamples for mgf intervals");
    mc->add_option("--bound-scale", p_.bound_scale, "Multiply every bound, for harness self-tests");
    add_threads(mc);
    add_format(mc);
    on(mc, [this] { return verify_mc(); });

    auto* crv = app_.add_subcommand("curve", "Sweep a bound over a parameter range");
    crv->add_option("--quantity", p_.quantity)
        ->check(CLI::IsMember({"upper", "lower", "two_sided", "types", "conjecture", "mgf", "envelope"}));
    crv->add_option("--n", p_.n);
    crv->add_option("--k", p_.k);
    crv->add_option("--from", p_.from);
    crv->add_option("--to", p_.to);
    crv->add_option("--points", p_.points)->check(CLI::PositiveNumber);
    add_format(crv);
    on(crv, [this] { return curve(); });
}

RunReport Runner::bound_mgf() {
    RunReport r;
    r.command = "bound mgf";
    r.inputs = {{"n", p_.n}, {"k", p_.k}, {"t", p_.t}};
    const auto parts = mgf_bound_parts(p_.n, p_.k, p_.t);
    r.outputs = {{"value", parts.value}, {"quadratic", parts.quadratic}, {"gamma", parts.gamma}};
    if (p_.t < 0.0) r.outputs["trivial"] = parts.trivial;
    if (p_.experimental) r.outputs["conjectured"] = experimental::conjectured_mgf_bound(p_.n, p_.k, p_.t);
    return r;
}

RunReport Runner::bound_tail() {
    RunReport r;
    r.command = "bound tail";
    const Side side = side_from(p_.side);
    r.inputs = {{"n", p_.n}, {"k", p_.k}, {"eps", p_.eps}, {"side", std::string(to_string(side))}};
    switch (side) {
        case Side::Upper:
            r.outputs = tail_json(upper_tail_bound(p_.n, p_.k, p_.eps));
            break;
        case Side::Lower:
            r.outputs = tail_json(lower_tail_bound(p_.n, p_.k, p_.eps));
            r.outputs["sharpened"] = sharpened_lower_tail_bound(p_.n, p_.k, p_.eps).primary;
            break;
        case Side::TwoSided:
            r.outputs = tail_json(two_sided_tail_bound(p_.n, p_.k, p_.eps));
            break;
    }
    return r;
}

RunReport Runner::bound_moment() {
    RunReport r;
    r.command = "bound moment";
    r.inputs = {{"n", p_.n}, {"k", p_.k}, {"m", p_.m}};
    r.outputs = {{"moment_bound", moment_bound(p_.n, p_.k, p_.m)}, {"variance_bound", variance_bound(p_.n, p_.k)}};
    if (p_.q) {
        r.inputs["q"] = *p_.q;
        r.outputs["qnorm_bound"] = qnorm_bound(p_.n, p_.k, *p_.q);
    }
    return r;
}

RunReport Runner::bound_mean() {
    RunReport r;
    r.command = "bound mean";
    r.inputs = {{"n", p_.n}, {"k", p_.k}};
    r.outputs = {{"mean_upper_bound", mean_upper_bound(p_.n, p_.k)},
                 {"linear", mean_upper_bound_linear(p_.n, p_.k)}};
    return r;
}

RunReport Runner::bound_types() {
    RunReport r;
    r.command = "bound types";
    r.inputs = {{"n", p_.n}, {"k", p_.k}, {"eps", p_.eps}};
    r.outputs = {{"value", types_bound(p_.n, p_.k, p_.eps)}};
    return r;
}

RunReport Runner::bound_conjecture() {
    RunReport r;
    r.command = "bound conjecture";
    r.inputs = {{"n", p_.n}, {"k", p_.k}, {"eps", p_.eps}};
    r.outputs = {{"value", conjecture_form_bound(p_.n, p_.k, p_.eps)}};
    return r;
}

RunReport Runner::envelope() {
    RunReport r;
    r.command = "envelope";
    r.inputs = {{"t", p_.t}};
    const auto e = subgamma_envelope_parts(p_.t);
    r.outputs = {{"value", e.value}, {"quadratic", e.quadratic}, {"log_form", e.log_form}, {"gamma", e.gamma}};
    return r;
}

RunReport Runner::invert_radius() {
    RunReport r;
    r.command = "invert radius";
    const Side side = side_from(p_.side);
    r.inputs = {{"n", p_.n}, {"k", p_.k}, {"delta", p_.delta}, {"side", std::string(to_string(side))}};
    const auto res = confidence_radius(p_.n, p_.k, p_.delta, side);
    r.outputs = {{"radius", res.radius}, {"achieved_bound", res.achieved_bound}, {"iterations", res.iterations}};
    return r;
}

RunReport Runner::invert_samplesize() {
    RunReport r;
    r.command = "invert samplesize";
    const Side side = side_from(p_.side);
    r.inputs = {{"k", p_.k}, {"eps", p_.eps}, {"delta", p_.delta}, {"side", std::string(to_string(side))}};
    const auto n = sample_size(p_.k, p_.eps, p_.delta, side);
    r.outputs = {{"n", n}, {"achieved_bound", tail_bound(n, p_.k, p_.eps, side).primary}};
    return r;
}

RunReport Runner::test_gof() {
    RunReport r;
    r.command = "test gof";
    std::vector<std::int64_t> counts = p_.counts;
    if (!p_.counts_file.empty()) {
        for (double v : read_column(p_.counts_file)) {
            if (v != static_cast<double>(static_cast<std::int64_t>(v))) {
                throw DomainError("counts must be integers");
            }
            counts.push_back(static_cast<std::int64_t>(v));
        }
    }
    if (counts.empty()) throw DomainError("give --counts or --counts-file");
    const auto x = CountVector::make(counts);
    const auto p0 = p_.dist.given() ? p_.dist.load() : ProbabilityVector::uniform(x.k());
    const auto res = gof_pvalue(x, p0);
    r.inputs = {{"counts", counts}, {"p", std::vector<double>(p0.probs().begin(), p0.probs().end())}};
    r.outputs = {{"statistic", res.statistic},
                 {"lr_statistic", res.lr_statistic},
                 {"pvalue_types", res.pvalue_types},
                 {"pvalue_centered", res.pvalue_centered},
                 {"pvalue", res.pvalue},
                 {"n", res.n},
                 {"k", res.k}};
    return r;
}

RunReport Runner::verify_exact() {
    RunReport r;
    r.command = "verify exact";
    ExactSweep s;
    s.min_n = p_.min_n;
    if (p_.max_n > 0) s.max_n = p_.max_n;
    if (!p_.ks.empty()) s.ks = p_.ks;
    if (p_.t_points > 0) s.t_points = p_.t_points;
    s.eps_points = p_.eps_points;
    s.eps_max = p_.eps_max;
    s.threads = p_.threads;
    if (p_.dist.given()) s.distributions = {p_.dist.load()};
    if (s.min_n < 1 || s.max_n < s.min_n) throw DomainError("need 1 <= min-n <= max-n");
    r.inputs = {{"min_n", s.min_n}, {"max_n", s.max_n}, {"k", s.ks}, {"t_points", s.t_points},
                {"eps_points", s.eps_points}, {"eps_max", s.eps_max}};
    add_certification(r, {certify_mgf(s), certify_tails(s), certify_moments(s), certify_representation(s)});
    return r;
}

RunReport Runner::verify_dominance() {
    RunReport r;
    r.command = "verify dominance";
    DominanceSweep s;
    if (p_.max_n > 0) s.max_n = p_.max_n;
    if (!p_.ps.empty()) s.ps = p_.ps;
    if (p_.t_points > 0) s.t_points = p_.t_points;
    s.threads = p_.threads;
    r.inputs = {{"max_n", s.max_n}, {"ps", s.ps.empty() ? default_binomial_ps() : s.ps}, {"t_points", s.t_points}};
    add_certification(r, {certify_dominance(s), certify_envelope(s)});
    return r;
}

RunReport Runner::verify_reduction() {
    RunReport r;
    r.command = "verify reduction";
    ReductionSweep s;
    if (p_.max_n > 0) s.max_n = p_.max_n;
    if (!p_.ks.empty()) s.ks = p_.ks;
    if (p_.t_points > 0) s.t_points = p_.t_points;
    s.threads = p_.threads;
    if (p_.dist.given()) s.distributions = {p_.dist.load()};
    r.inputs = {{"max_n", s.max_n}, {"k", s.ks}, {"t_points", s.t_points}};
    add_certification(r, {certify_reduction(s)});
    return r;
}

RunReport Runner::verify_mc() {
    RunReport r;
    r.command = "verify mc";
    r.seed = p_.seed;
    McSweep s = default_mc_sweep(p_.seed);
    if (p_.n > 0 || p_.dist.given() || !p_.params.empty() || p_.kind != "tail") {
        McCell cell = s.cells.front();
        if (p_.n > 0) cell.n = p_.n;
        if (p_.dist.given()) {
            cell.p = p_.dist.load();
        } else if (p_.k > 0) {
            cell.p = ProbabilityVector::uniform(p_.k);
        }
        cell.kind = p_.kind == "mgf" ? McCheckKind::Mgf : McCheckKind::Tail;
        if (!p_.params.empty()) {
            cell.params = p_.params;
        } else if (cell.kind == McCheckKind::Mgf) {
            throw DomainError("--kind mgf needs --params with t values");
        }
        s.cells = {cell};
    } else if (p_.k > 0) {
        s.cells.front().p = ProbabilityVector::uniform(p_.k);
    }
    s.trials = p_.trials;
    s.options.confidence = p_.confidence;
    s.options.bootstrap_resamples = p_.bootstrap;
    s.options.threads = p_.threads;
    s.bound_scale = p_.bound_scale;

    const McCell& cell = s.cells.front();
    r.inputs = {{"n", cell.n},
                {"k", cell.p.k()},
                {"kind", cell.kind == McCheckKind::Mgf ? "mgf" : "tail"},
                {"params", cell.params},
                {"trials", s.trials},
                {"confidence", s.options.confidence},
                {"bound_scale", s.bound_scale}};

    const auto report = verify_bounds_mc(s);
    r.columns = {"kind", "n", "k", "param", "threshold", "point", "ci_low", "ci_high", "bound", "margin",
                 "violated"};
    for (const auto& c : report.checks) {
        r.rows.push_back({c.kind == McCheckKind::Mgf ? "mgf" : "tail", c.n, c.k, c.param, c.threshold,
                          c.estimate.point, c.estimate.ci_low, c.estimate.ci_high, c.bound, c.margin,
                          c.violated});
    }
    r.outputs["passed"] = report.passed();
    r.outputs["checks"] = report.checks.size();
    r.outputs["violations"] = report.violations;
    return r;
}

RunReport Runner::curve() {
    RunReport r;
    r.command = "curve";
    const std::string& qty = p_.quantity;
    const bool needs_nk = qty != "envelope";
    if (needs_nk && (p_.n < 1 || p_.k < 1)) throw DomainError("curve " + qty + " needs --n and --k");
    r.inputs = {{"quantity", qty}, {"from", p_.from}, {"to", p_.to}, {"points", p_.points}};
    if (needs_nk) {
        r.inputs["n"] = p_.n;
        r.inputs["k"] = p_.k;
    }
    const auto grid = linspace(p_.from, p_.to, p_.points);
    if (qty == "upper") {
        r.columns = {"eps", "value", "relaxed_quadratic", "relaxed_minform"};
        for (double e : grid) {
            const auto b = upper_tail_bound(p_.n, p_.k, e);
            r.rows.push_back({e, b.primary, b.relaxed_quadratic, b.relaxed_minform});
        }
    } else if (qty == "lower") {
        r.columns = {"eps", "value", "closed_form", "relaxed_quadratic"};
        for (double e : grid) {
            const auto b = lower_tail_bound(p_.n, p_.k, e);
            r.rows.push_back({e, sharpened_lower_tail_bound(p_.n, p_.k, e).primary, b.primary, b.relaxed_quadratic});
        }
    } else if (qty == "two_sided") {
        r.columns = {"eps", "value", "upper", "lower"};
        for (double e : grid) {
            r.rows.push_back({e, two_sided_tail_bound(p_.n, p_.k, e).primary, upper_tail_bound(p_.n, p_.k, e).primary,
                              sharpened_lower_tail_bound(p_.n, p_.k, e).primary});
        }
    } else if (qty == "types") {
        r.columns = {"eps", "value"};
        for (double e : grid) r.rows.push_back({e, types_bound(p_.n, p_.k, e)});
    } else if (qty == "conjecture") {
        r.columns = {"eps", "value"};
        for (double e : grid) r.rows.push_back({e, conjecture_form_bound(p_.n, p_.k, e)});
    } else if (qty == "mgf") {
        r.columns = {"t", "value", "quadratic", "gamma", "trivial"};
        for (double t : grid) {
            const auto b = mgf_bound_parts(p_.n, p_.k, t);
            r.rows.push_back({t, b.value, b.quadratic, b.gamma,
                              t < 0.0 ? b.trivial : std::numeric_limits<double>::infinity()});
        }
    } else {
        r.columns = {"t", "value", "quadratic", "log_form", "gamma"};
        for (double t : grid) {
            const auto b = subgamma_envelope_parts(t);
            r.rows.push_back({t, b.value, b.quadratic, b.log_form, b.gamma});
        }
    }
    return r;
}

void Runner::diagnose(const std::string& message) {
    if (color_) {
        err_ << "\x1b[31merror:\x1b[0m " << message << '\n';
    } else {
        err_ << "error: " << message << '\n';
    }
}

int Runner::run(const std::vector<std::string>& args) {
    build();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app_.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out_ << app_.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out_ << app_.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out_ << RELENT_VERSION << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        diagnose(e.what());
        const CLI::App* failing = &app_;
        // Show usage of the deepest subcommand that was reached.
        for (auto subs = failing->get_subcommands(); !subs.empty(); subs = failing->get_subcommands()) {
            failing = subs.front();
        }
        err_ << failing->help();
        return kUsage;
    } catch (const DomainError& e) {
        diagnose(e.what());
        return kUsage;
    } catch (const ShapeError& e) {
        diagnose(e.what());
        return kUsage;
    } catch (const ResourceError& e) {
        diagnose(e.what());
        return kUsage;
    }
    if (!report_) return kUsage;

    const std::string format = !p_.format.empty() ? p_.format : report_->command == "curve" ? "csv" : "json";
    if (format == "csv") {
        write_csv(out_, *report_);
    } else {
        write_json(out_, *report_, RELENT_VERSION);
    }
    const auto& passed = report_->outputs.find("passed");
    if (passed != report_->outputs.end() && !passed->get<bool>()) return kViolation;
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    Runner runner(out, err, color);
    return runner.run(args);
}

}  // namespace relent::cli
