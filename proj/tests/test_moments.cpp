#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "normshell/moments.hpp"
#include "test_support.hpp"

using namespace normshell;

TEST(BinomPmf, Examples) {
    EXPECT_DOUBLE_EQ(binom_pmf(2, 0.5, 1), 0.5);
    EXPECT_EQ(binom_pmf(1, 0.0, 0), 1.0);
    EXPECT_EQ(binom_pmf(3, 0.0, 0), 1.0);
    EXPECT_EQ(binom_pmf(3, 1.0, 3), 1.0);
    EXPECT_EQ(binom_pmf(3, 1.0, 2), 0.0);
    EXPECT_NEAR(binom_pmf(3, 1.0 / 3.0, 1), 4.0 / 9.0, 1e-15);
}

TEST(BinomPmf, OutOfRange) {
    EXPECT_THROW(binom_pmf(3, 0.5, 4), Error);
    EXPECT_THROW(binom_pmf(3, 1.5, 1), Error);
    EXPECT_THROW(binom_pmf(3, -0.1, 1), Error);
}

// Reference values from 50-digit arithmetic.
TEST(BinomPmf, LogSpaceAgainstHighPrecision) {
    struct Case {
        unsigned n;
        double p;
        unsigned k;
        double expected;
    };
    const Case cases[] = {
        {50, 0.3, 15, 0.12234686183540145466},
        {100, 0.5, 50, 0.079589237387178761498},
        {500, 0.1, 37, 0.0087971341726882494778},
        {21, 0.25, 3, 0.11715866329950586078},
        {1000, 0.001, 0, 0.36769542477096404463},
        {200, 0.999, 200, 0.81864882947863570556},
    };
    for (const auto& c : cases) {
        EXPECT_NEAR(binom_pmf(c.n, c.p, c.k) / c.expected, 1.0, 1e-12) << c.n << ' ' << c.k;
    }
}

TEST(BinomPmf, SumsToOne) {
    Rng rng(31);
    std::uniform_int_distribution<unsigned> nd(1, 500);
    std::uniform_real_distribution<double> pd(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const unsigned n = trial < 20 ? static_cast<unsigned>(trial + 1) : nd(rng);
        const double p = pd(rng);
        double total = 0.0;
        for (unsigned k = 0; k <= n; ++k) total += binom_pmf(n, p, k);
        EXPECT_NEAR(total, 1.0, 1e-12) << "n=" << n << " p=" << p;
    }
}

TEST(BinomPmf, ExactAndLogSpaceAgreeAtThreshold) {
    // n = 20 uses the exact path; compare with the log-space evaluator directly.
    for (unsigned k = 0; k <= 20; ++k) {
        EXPECT_NEAR(binom_pmf(20, 0.37, k), detail::binom_pmf_log_space(20, 0.37, k),
                    1e-13 * binom_pmf(20, 0.37, k));
    }
}

TEST(Hornich, SmallValues) {
    EXPECT_EQ(hornich_constant(1), 1.0);
    EXPECT_EQ(hornich_constant(2), 1.0);
    EXPECT_NEAR(hornich_constant(3), 4.0 / 3.0, 1e-15);
    EXPECT_EQ(hornich_constant(4), 1.5);
    EXPECT_EQ(hornich_constant(5), 1.728);
    EXPECT_EQ(hornich_constant(20), 3.5239410400390625);
    EXPECT_THROW(hornich_constant(0), Error);
}

TEST(Hornich, LargeValuesAgainstHighPrecision) {
    EXPECT_NEAR(hornich_constant(21) / 3.6170857340856909576, 1.0, 1e-12);
    EXPECT_NEAR(hornich_constant(50) / 5.6137586329608524238, 1.0, 1e-12);
    EXPECT_NEAR(hornich_constant(100) / 7.9589237387178761498, 1.0, 1e-12);
    EXPECT_NEAR(hornich_constant(1000) / 25.225018178360801907, 1.0, 1e-12);
}

TEST(Hornich, SquareRootGrowth) {
    for (unsigned n = 50; n <= 2000; ++n) {
        const double ratio = hornich_constant(n) * std::sqrt(std::numbers::pi / (2.0 * n));
        EXPECT_GE(ratio, 0.9);
        EXPECT_LE(ratio, 1.01);
    }
}

TEST(MgLowerBound, Examples) {
    EXPECT_EQ(mg_lower_bound(MomentProfile({1, 1, 1})), 1.0);
    EXPECT_EQ(mg_lower_bound(MomentProfile({1, 3})), 2.0);
    EXPECT_NEAR(mg_lower_bound(MomentProfile({0.1, 0.1, 5})), 4.8, 1e-15);
    EXPECT_EQ(mg_lower_bound(MomentProfile({0.5})), 0.5);
    EXPECT_EQ(mg_lower_bound(MomentProfile({1, 1, 1.5})), 1.0);
    EXPECT_EQ(mg_lower_bound(MomentProfile({0.1, 0.1, 0.1, 3})), 2.7);
}

TEST(MgLowerBound, MatchesDirectEvaluationAndDominatesShell) {
    Rng rng(41);
    std::uniform_real_distribution<double> v(0.0, 10.0);
    for (int k = 0; k < 5000; ++k) {
        std::vector<double> e(1 + k % 9);
        for (auto& x : e) x = v(rng);
        const MomentProfile p(e);
        const double mg = mg_lower_bound(p);
        EXPECT_EQ(mg, support::brute_force_mg_lower(e));
        // equal in exact arithmetic when the largest moment comes last
        EXPECT_GE(mg, std::max(0.0, 2.0 * p.max() - p.sum()) - 1e-14 * p.sum());
        EXPECT_LE(mg, p.sum());
    }
}

TEST(MgLowerBound, DominatesShellExactlyOnDyadicProfiles) {
    Rng rng(43);
    for (int k = 0; k < 5000; ++k) {
        const auto e = support::random_dyadic_profile(rng, 1 + k % 9);
        const MomentProfile p(e);
        EXPECT_GE(mg_lower_bound(p), std::max(0.0, 2.0 * p.max() - p.sum()));
    }
}

TEST(BoundsReport, Examples) {
    const BoundReport mg = bounds_report(MomentProfile({1, 1, 1}), Assumption::MG, 1);
    EXPECT_EQ(mg.lower, 1.0);
    EXPECT_EQ(mg.upper, 3.0);
    EXPECT_TRUE(mg.optimal);
    for (auto a : {Assumption::N, Assumption::IIDC, Assumption::IC, Assumption::MG}) {
        const BoundReport r = bounds_report(MomentProfile({4, 4}), a, 2);
        EXPECT_EQ(r.lower, 8.0);
        EXPECT_EQ(r.upper, 8.0);
        EXPECT_TRUE(r.optimal);
    }
    const BoundReport iidc = bounds_report(MomentProfile({1, 1, 1}), Assumption::IIDC, 1);
    EXPECT_NEAR(iidc.lower, 4.0 / 3.0, 1e-15);
    EXPECT_EQ(iidc.upper, 3.0);
}

TEST(BoundsReport, AssumptionSpecifics) {
    const BoundReport n = bounds_report(MomentProfile({5, 1, 1}), Assumption::N, 1);
    EXPECT_EQ(n.lower, 3.0);
    EXPECT_EQ(n.upper, 7.0);
    const BoundReport ic = bounds_report(MomentProfile({5, 1, 1}), Assumption::IC, 1);
    EXPECT_EQ(ic.lower, 0.0);
    EXPECT_FALSE(ic.optimal);
    const BoundReport expanded = bounds_report(MomentProfile({2}), Assumption::IIDC, 1, 4);
    EXPECT_EQ(expanded.lower, 3.0);
    EXPECT_EQ(expanded.upper, 8.0);
    EXPECT_THROW(bounds_report(MomentProfile({1, 2}), Assumption::IIDC, 1), Error);
    EXPECT_THROW(bounds_report(MomentProfile({1, 2}), Assumption::N, 3), Error);
    EXPECT_THROW(bounds_report(MomentProfile({1, 2}), Assumption::N, 1, 3), Error);
    EXPECT_THROW(MomentProfile({-1.0}), Error);
    EXPECT_THROW(parse_assumption("IID"), Error);
}

TEST(EmpiricalCheck, DeterministicPath) {
    const std::vector<std::vector<double>> paths(10, {1, -1, 1});
    const EmpiricalReport r = empirical_check(paths, Assumption::N);
    EXPECT_EQ(r.mean_abs_sum, 1.0);
    EXPECT_EQ(r.sd_abs_sum, 0.0);
    EXPECT_EQ(r.bounds.upper, 3.0);
    EXPECT_EQ(r.bounds.lower, 0.0);
    EXPECT_TRUE(r.within());
}

TEST(EmpiricalCheck, SinglePathOnBoundary) {
    const std::vector<std::vector<double>> paths{{5, 0}};
    const EmpiricalReport r = empirical_check(paths, Assumption::N);
    EXPECT_EQ(r.mean_abs_sum, 5.0);
    EXPECT_EQ(r.bounds.lower, 5.0);
    EXPECT_EQ(r.bounds.upper, 5.0);
    EXPECT_TRUE(r.within());
}

TEST(EmpiricalCheck, FlagsViolations) {
    // Perfectly cancelling increments are not independent; |S_2| = 0 sits
    // below the IIDC bound c_2 E|X_1| = 1.
    const std::vector<std::vector<double>> paths(100, {1, -1});
    const EmpiricalReport r = empirical_check(paths, Assumption::IIDC);
    EXPECT_EQ(r.mean_abs_sum, 0.0);
    EXPECT_EQ(r.bounds.lower, 1.0);
    EXPECT_TRUE(r.below_lower);
    EXPECT_FALSE(r.within());
}

TEST(EmpiricalCheck, RaggedInput) {
    const std::vector<std::vector<double>> paths{{1, 2}, {1}};
    EXPECT_THROW(empirical_check(paths, Assumption::N), Error);
    EXPECT_THROW(empirical_check(std::vector<std::vector<double>>{}, Assumption::N), Error);
}

TEST(EmpiricalCheck, FairSignsMatchEnumeration) {
    Rng rng(77);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::vector<double>> paths(20000, std::vector<double>(3));
    for (auto& row : paths) {
        for (auto& x : row) x = coin(rng) ? 1.0 : -1.0;
    }
    const EmpiricalReport r = empirical_check(paths, Assumption::IIDC);
    const double exact = support::enumerated_mean_abs_sign_sum(3);
    EXPECT_EQ(exact, 1.5);
    EXPECT_LE(std::abs(r.mean_abs_sum - exact), r.delta);
    EXPECT_TRUE(r.within());
}

// Three-point increments +-a/p with probability p/2 each approach the
// upper bound sum a_i as p -> 0.
TEST(EmpiricalCheck, ThreePointLawsApproachUpperBound) {
    Rng rng(5);
    const double p = 1e-3;
    const std::vector<double> a{1.0, 2.0, 0.5};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> paths(400000, std::vector<double>(3));
    for (auto& row : paths) {
        for (std::size_t i = 0; i < 3; ++i) {
            const double draw = u(rng);
            row[i] = draw < p / 2 ? -a[i] / p : draw < p ? a[i] / p : 0.0;
        }
    }
    const EmpiricalReport r = empirical_check(paths, Assumption::IC);
    EXPECT_TRUE(r.within());
    EXPECT_GE(r.mean_abs_sum, 0.95 * r.bounds.upper - r.delta);
}
