#include <gtest/gtest.h>

#include "relent/certify.hpp"

using namespace relent;

namespace {

ExactSweep small_sweep() {
    ExactSweep s;
    s.max_n = 6;
    s.t_points = 15;
    s.eps_points = 15;
    return s;
}

}  // namespace

TEST(Linspace, Endpoints) {
    const auto xs = linspace(-1.0, 1.0, 5);
    ASSERT_EQ(xs.size(), 5u);
    EXPECT_EQ(xs.front(), -1.0);
    EXPECT_EQ(xs[2], 0.0);
    EXPECT_EQ(xs.back(), 1.0);
    EXPECT_EQ(linspace(2.0, 3.0, 1), std::vector<double>{2.0});
}

TEST(DefaultDistributions, ValidAndIncludeAZeroCell) {
    for (std::int64_t k : {2, 3, 5}) {
        const auto ds = default_distributions(k);
        ASSERT_FALSE(ds.empty());
        for (const auto& p : ds) EXPECT_EQ(p.k(), k);
    }
    bool zero = false;
    for (const auto& p : default_distributions(3)) zero = zero || p.support_size() < 3;
    EXPECT_TRUE(zero);
    EXPECT_EQ(default_binomial_ps().size(), 33u);
}

TEST(Certify, SmallExactSweepPasses) {
    const auto r = certify_exact(small_sweep());
    EXPECT_TRUE(r.passed()) << r.violations.front().check << " at " << r.violations.front().where;
    EXPECT_GT(r.checks, 1000u);
    EXPECT_GE(r.worst_slack, -kLogMgfTolerance);
}

TEST(Certify, ReportDoesNotDependOnThreads) {
    auto s = small_sweep();
    const auto one = certify_mgf(s);
    s.threads = 3;
    const auto three = certify_mgf(s);
    EXPECT_EQ(one.checks, three.checks);
    EXPECT_EQ(one.worst_slack, three.worst_slack);
}

TEST(Certify, DominanceAndEnvelopeSmall) {
    DominanceSweep s;
    s.max_n = 25;
    s.t_points = 10;
    const auto dom = certify_dominance(s);
    EXPECT_TRUE(dom.passed());
    EXPECT_EQ(dom.checks, 25u * 33u * 4u);
    const auto env = certify_envelope(s);
    EXPECT_TRUE(env.passed());
}

TEST(Certify, ReductionSmall) {
    ReductionSweep s;
    s.max_n = 5;
    s.t_points = 8;
    const auto r = certify_reduction(s);
    EXPECT_TRUE(r.passed());
    EXPECT_GT(r.checks, 0u);
}

TEST(Certify, MergeAccumulates) {
    CertificationReport a;
    a.checks = 3;
    a.worst_slack = 0.5;
    CertificationReport b;
    b.checks = 2;
    b.worst_slack = -0.1;
    b.violations.push_back({"x", "y", 1.0, 0.9});
    a.merge(std::move(b));
    EXPECT_EQ(a.checks, 5u);
    EXPECT_EQ(a.worst_slack, -0.1);
    EXPECT_FALSE(a.passed());
}
