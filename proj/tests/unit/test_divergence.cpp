#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "relent/divergence.hpp"
#include "relent/errors.hpp"

using namespace relent;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

std::vector<double> dense_grid() {
    std::vector<double> xs;
    for (int i = 0; i <= 4000; ++i) xs.push_back(i * 0.001);  // [0, 4]
    for (int i = 1; i <= 200; ++i) xs.push_back(4.0 + i * 0.5);
    return xs;
}

}  // namespace

TEST(Phi, WorkedValues) {
    EXPECT_EQ(phi(1.0), 0.0);
    EXPECT_EQ(phi(0.0), 1.0);
    EXPECT_LT(rel_err(phi(2.0), 0.386294361119890618834), 1e-15);
}

TEST(Phi, NegativeInputIsDomainError) {
    EXPECT_THROW(phi(-1e-300), DomainError);
    EXPECT_THROW(phi_parts(-2.0), DomainError);
    EXPECT_THROW(phi(std::nan("")), DomainError);
}

TEST(Phi, PartsWorkedValues) {
    const auto two = phi_parts(2.0);
    EXPECT_LT(rel_err(two.plus, 0.386294361119890618834), 1e-15);
    EXPECT_EQ(two.minus, 0.0);
    const auto half = phi_parts(0.5);
    EXPECT_EQ(half.plus, 0.0);
    EXPECT_LT(rel_err(half.minus, 0.153426409720027345291), 1e-15);
    const auto one = phi_parts(1.0);
    EXPECT_EQ(one.plus, 0.0);
    EXPECT_EQ(one.minus, 0.0);
}

TEST(Phi, ShapeOnDenseGrid) {
    const auto xs = dense_grid();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const auto parts = phi_parts(x);
        ASSERT_GE(phi(x), 0.0) << x;
        ASSERT_EQ(parts.total, phi(x)) << x;
        ASSERT_EQ(parts.total, parts.plus + parts.minus) << x;
        if (x != 1.0) ASSERT_GT(phi(x), 0.0) << x;
        if (i > 0) {
            const double prev = xs[i - 1];
            if (x <= 1.0) {
                ASSERT_LT(phi(x), phi(prev)) << x;
            } else if (prev >= 1.0) {
                ASSERT_GT(phi(x), phi(prev)) << x;
            }
            ASSERT_GE(parts.plus, phi_parts(prev).plus);
            ASSERT_LE(parts.minus, phi_parts(prev).minus);
        }
    }
}

TEST(Phi, ConvexOnGridTriples) {
    const auto xs = dense_grid();
    for (std::size_t i = 0; i + 2 < xs.size(); i += 7) {
        for (std::size_t step : {1u, 13u, 150u}) {
            if (i + 2 * step >= xs.size()) continue;
            const double x = xs[i], y = xs[i + step], z = xs[i + 2 * step];
            const double w = (z - y) / (z - x);
            ASSERT_LE(phi(y), w * phi(x) + (1.0 - w) * phi(z) + 1e-12) << x << " " << y << " " << z;
        }
    }
}

TEST(ProbabilityVector, Validation) {
    EXPECT_NO_THROW(ProbabilityVector::make({0.2, 0.3, 0.5}));
    EXPECT_NO_THROW(ProbabilityVector::make({0.5, 0.5 + 5e-13}));
    EXPECT_THROW(ProbabilityVector::make({0.5, 0.6}), DomainError);
    EXPECT_THROW(ProbabilityVector::make({-0.1, 1.1}), DomainError);
    EXPECT_THROW(ProbabilityVector::make({}), DomainError);
    EXPECT_THROW(ProbabilityVector::make({0.0, 0.0}), DomainError);
    const auto p = ProbabilityVector::make({1.0, 1.0, 2.0}, Normalization::Renormalize);
    EXPECT_DOUBLE_EQ(p[2], 0.5);
    EXPECT_EQ(p.k(), 3);
    EXPECT_EQ(ProbabilityVector::make({0.0, 1.0}).support_size(), 1);
}

TEST(CountVector, Validation) {
    EXPECT_EQ(CountVector::make({3, 1}).n(), 4);
    EXPECT_THROW(CountVector::make({0, 0}), DomainError);
    EXPECT_THROW(CountVector::make({-1, 2}), DomainError);
}

TEST(KlDivergence, WorkedValues) {
    const auto half = ProbabilityVector::make({0.5, 0.5});
    const auto point = ProbabilityVector::make({1.0, 0.0});
    EXPECT_EQ(kl_divergence(half, half), 0.0);
    EXPECT_LT(rel_err(kl_divergence(point, half), 0.693147180559945309417), 1e-15);
    EXPECT_EQ(kl_divergence(half, point), kInf);
    EXPECT_EQ(kl_divergence_phi_form(half, point), kInf);
}

TEST(KlDivergence, LengthMismatchIsShapeError) {
    EXPECT_THROW(kl_divergence(ProbabilityVector::uniform(2), ProbabilityVector::uniform(3)), ShapeError);
    EXPECT_THROW(empirical_kl(CountVector::make({1, 1}), ProbabilityVector::uniform(3)), ShapeError);
}

TEST(KlDivergence, NonNegativeAndRoutesAgreeOnRandomPairs) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int k = 2 + trial % 6;
        std::vector<double> a(k), b(k);
        for (int i = 0; i < k; ++i) {
            a[i] = u(rng) < 0.15 ? 0.0 : u(rng);
            b[i] = u(rng) + 1e-3;
        }
        a[trial % k] += 0.1;
        const auto q = ProbabilityVector::make(a, Normalization::Renormalize);
        const auto p = ProbabilityVector::make(b, Normalization::Renormalize);
        const double direct = kl_divergence(q, p);
        const double via_phi = kl_divergence_phi_form(q, p);
        ASSERT_GE(direct, 0.0);
        ASSERT_LE(std::abs(direct - via_phi), 1e-12 * std::max(1.0, direct));
        ASSERT_EQ(kl_divergence(q, q), 0.0);
        if (direct == 0.0) {
            for (int i = 0; i < k; ++i) ASSERT_NEAR(q[i], p[i], 1e-12);
        }
    }
}

TEST(EmpiricalKl, WorkedValues) {
    const auto half = ProbabilityVector::make({0.5, 0.5});
    EXPECT_LT(rel_err(empirical_kl(CountVector::make({3, 1}), half), 0.130812035941136959129), 1e-14);
    EXPECT_EQ(empirical_kl(CountVector::make({2, 2}), half), 0.0);
    EXPECT_LT(rel_err(empirical_kl(CountVector::make({0, 4}), half), 0.693147180559945309417), 1e-15);
}

TEST(EmpiricalKl, ImpossibleObservationIsInfinite) {
    const auto p = ProbabilityVector::make({0.0, 1.0});
    EXPECT_EQ(empirical_kl(CountVector::make({1, 3}), p), kInf);
    EXPECT_EQ(empirical_kl(CountVector::make({0, 3}), p), 0.0);
}

TEST(EmpiricalKl, MatchesPhiDecomposition) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int k = 2 + trial % 5;
        std::vector<double> w(k);
        for (auto& x : w) x = u(rng);
        const auto p = ProbabilityVector::make(w, Normalization::Renormalize);
        std::vector<std::int64_t> counts(k);
        for (auto& c : counts) c = static_cast<std::int64_t>(u(rng) * 20);
        counts[0] += 1;
        const auto x = CountVector::make(counts);
        double via_phi = 0.0;
        for (int i = 0; i < k; ++i) {
            via_phi += p[i] * phi_parts(static_cast<double>(x[i]) / (static_cast<double>(x.n()) * p[i])).total;
        }
        const double direct = empirical_kl(x, p);
        ASSERT_LE(std::abs(direct - via_phi), 1e-12 * std::max(direct, 1e-3)) << trial;
    }
}

TEST(EffectiveK, DropsEmptyZeroProbabilityCells) {
    const auto p = ProbabilityVector::make({0.0, 0.4, 0.6});
    EXPECT_EQ(effective_k(CountVector::make({0, 2, 3}), p), 2);
    EXPECT_EQ(effective_k(CountVector::make({1, 2, 3}), p), 3);
}
