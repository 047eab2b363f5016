// SPDX-License-Identifier: MIT
#include "stackel/catalog.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

namespace {

using stackel::AssembledMetric;
using stackel::ParamMap;
using stackel::PhiBranch;
using stackel::SignTriple;
using stackel::Variant;
using std::numbers::pi;

TEST(Families, TenEntriesInReadingOrder) {
    const auto& f = stackel::families();
    ASSERT_EQ(f.size(), 10u);
    const Variant variants[] = {Variant::A, Variant::A, Variant::A, Variant::B, Variant::B,
                                Variant::B, Variant::B, Variant::C, Variant::C, Variant::C};
    const PhiBranch branches[] = {PhiBranch::cosh, PhiBranch::sinh,  PhiBranch::power,
                                  PhiBranch::cos,  PhiBranch::cosh,  PhiBranch::sinh,
                                  PhiBranch::power, PhiBranch::cosh, PhiBranch::sinh,
                                  PhiBranch::power};
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_EQ(f[i].id, static_cast<int>(i) + 1);
        EXPECT_EQ(f[i].variant, variants[i]);
        EXPECT_EQ(f[i].branch, branches[i]);
        EXPECT_EQ(stackel::branch_for(f[i].epsilon, f[i].xi), f[i].branch);
        EXPECT_FALSE(f[i].slots.empty());
        EXPECT_FALSE(f[i].constraint.empty());
        EXPECT_EQ(f[i].free_e3, f[i].variant == Variant::A);
    }
}

TEST(Families, UnknownIdsAndParameters) {
    EXPECT_THROW((void)stackel::family_spec(0), stackel::InvalidArgument);
    EXPECT_THROW((void)stackel::family_spec(11), stackel::InvalidArgument);
    EXPECT_THROW((void)stackel::catalog(1, ParamMap{{"zeta", 1.0}}), stackel::InvalidArgument);
    EXPECT_THROW((void)stackel::catalog(1, ParamMap{{"a1", NAN}}), stackel::InvalidArgument);
}

class FamilyDefaults : public ::testing::TestWithParam<int> {};

TEST_P(FamilyDefaults, SolvesFieldEquations) {
    const int id = GetParam();
    for (SignTriple signs : {SignTriple{1, 1, 1}, SignTriple{1, -1, 1}}) {
        const AssembledMetric m = stackel::catalog(id, {}, 0.25, signs);
        ASSERT_EQ(m.family_id(), id);
        ASSERT_TRUE(m.display_check().has_value());
        const auto grid = m.default_grid(50);
        const double lam = m.cosmological_constant();
        const auto rep = stackel::einstein_residual(m.provider(), lam, grid);
        EXPECT_TRUE(rep.failures.empty());
        EXPECT_LT(rep.global_max, 1e-7);
        EXPECT_LT(rep.ricci_scalar_dev, 1e-7);
        double dual = 0.0;
        for (double t : grid) dual = std::max(dual, stackel::ricci_dual_path_deviation(m.jet(t)));
        EXPECT_LT(dual, 1e-7);
        EXPECT_LT(stackel::kappa_consistency(m, grid), 1e-8);
    }
}

TEST_P(FamilyDefaults, FiniteDifferencePathWithinLooseTolerance) {
    const AssembledMetric m = stackel::catalog(GetParam());
    const auto rep = stackel::einstein_residual(m.provider(), m.cosmological_constant(),
                                                m.default_grid(20),
                                                stackel::RicciPath::finite_difference);
    EXPECT_LT(rep.global_max, 1e-4);
}

TEST_P(FamilyDefaults, WrongLambdaIsDetected) {
    const AssembledMetric m = stackel::catalog(GetParam());
    const auto rep = stackel::einstein_residual(m.provider(), 2.0 * m.cosmological_constant(),
                                                m.default_grid(50));
    EXPECT_GT(rep.global_max, 1e-3);
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, FamilyDefaults, ::testing::Range(1, 11));

TEST(Catalog, DiagonalFamilyOnShortDomain) {
    const AssembledMetric m = stackel::catalog(1, ParamMap{{"a1", 2}, {"a2", 1}, {"a3", 0}});
    const auto grid = stackel::TauGrid::uniform(0.2, 2.0, 50);
    EXPECT_LT(stackel::einstein_residual(m.provider(), m.cosmological_constant(), grid).global_max,
              1e-7);
    EXPECT_LT(stackel::kappa_consistency(m, grid), 1e-8);
    EXPECT_NEAR(m.phi().p(), std::sqrt(3.0), 1e-14);
}

TEST(Catalog, AnisotropicSamplesOnFullDomain) {
    for (double a1 : {0.5, 1.0, 2.0}) {
        for (double a2 : {0.0, 1.0}) {
            const AssembledMetric m = stackel::catalog(1, ParamMap{{"a1", a1}, {"a2", a2}});
            const auto rep =
                stackel::einstein_residual(m.provider(), m.cosmological_constant(), m.default_grid());
            EXPECT_TRUE(rep.failures.empty()) << a1 << ' ' << a2;
            EXPECT_LT(rep.global_max, 1e-7) << a1 << ' ' << a2;
        }
    }
}

TEST(Catalog, RotationFamilyReportsTraceInvariant) {
    for (double a : {pi / 6, pi / 4, pi / 3}) {
        const double c = 0.5 * std::sqrt(3.0) * std::sin(a);
        const AssembledMetric m = stackel::catalog(4, ParamMap{{"a", a}, {"c", c}});
        const double q = 2.0 * (3.0 * std::sin(a) * std::sin(a) - c * c);
        EXPECT_EQ(m.canonical_class().epsilon, 1);
        EXPECT_NEAR(m.phi().p(), std::sqrt(q / 2.0), 1e-12);
        EXPECT_EQ(m.epsilon_time(), -1);
    }
}

TEST(Catalog, ConstraintViolations) {
    EXPECT_THROW((void)stackel::catalog(1, ParamMap{{"a1", 1}, {"a2", 1}, {"a3", 1}}),
                 stackel::ConstraintError);
    EXPECT_THROW((void)stackel::catalog(4, ParamMap{{"c", 2.0}}), stackel::ConstraintError);
    EXPECT_THROW((void)stackel::catalog(5, ParamMap{{"c", 0.1}}), stackel::ConstraintError);
    EXPECT_THROW((void)stackel::catalog(4, ParamMap{{"a", 0.0}}), stackel::ConstraintError);
    EXPECT_THROW((void)stackel::catalog(4, ParamMap{{"a", pi}}), stackel::ConstraintError);
    EXPECT_THROW((void)stackel::catalog(7, ParamMap{{"c", 0.1}}), stackel::ConstraintError);
    EXPECT_THROW((void)stackel::catalog(8, ParamMap{{"b", 0.0}}), stackel::ConstraintError);
}

TEST(Catalog, PowerLawRotationFamilySnapsOntoConstraint) {
    for (double a : {0.4, pi / 3, 2.0}) {
        const AssembledMetric m = stackel::catalog(7, ParamMap{{"a", a}});
        EXPECT_EQ(m.canonical_class().epsilon, 0);
        const double c = std::sqrt(3.0) * std::sin(a) * (1.0 + 1e-12);
        EXPECT_NO_THROW((void)stackel::catalog(7, ParamMap{{"a", a}, {"c", c}}));
        EXPECT_NO_THROW((void)stackel::catalog(7, ParamMap{{"a", a}, {"c", -c}}));
    }
}

TEST(Catalog, JordanFamiliesUseAbsoluteMomentum) {
    for (double b : {-1.5, 0.7}) {
        const AssembledMetric m = stackel::catalog(8, ParamMap{{"a", 0.2}, {"b", b}});
        EXPECT_NEAR(m.phi().p(), std::abs(b), 1e-14);
        EXPECT_EQ(m.canonical_class().epsilon, -1);
    }
    EXPECT_EQ(stackel::catalog(10).canonical_class().epsilon, 0);
}

TEST(Catalog, PrintedHeadersAreKeptVerbatim) {
    EXPECT_EQ(stackel::family_spec(3).printed_header, "epsilon = -1, xi = 1");
    EXPECT_EQ(stackel::family_spec(3).epsilon, 0);
    EXPECT_EQ(stackel::family_spec(8).printed_header, "epsilon = -xi = 1, p = b");
    EXPECT_EQ(stackel::family_spec(10).printed_header, "epsilon = -1, xi = 1, b = 0");
    EXPECT_EQ(stackel::family_spec(10).epsilon, 0);
}

TEST(CompareDisplay, PrintedFormsThatAgree) {
    for (int id : {1, 2, 3, 4, 5, 6, 7, 10}) {
        const AssembledMetric m = stackel::catalog(id);
        EXPECT_TRUE(m.display_check()->consistent) << "family " << id << ": "
                                                   << m.display_check()->note;
    }
    EXPECT_NE(stackel::catalog(5).display_check()->compared, "all metric components");
}

TEST(CompareDisplay, JordanDisplaysDisagree) {
    for (int id : {8, 9}) {
        const AssembledMetric m = stackel::catalog(id);
        EXPECT_FALSE(m.display_check()->consistent) << "family " << id;
        EXPECT_GT(m.display_check()->max_deviation, 1e-3);
    }
}

TEST(CompareDisplay, SignedIsotropicDisplayDoubleCountsSigns) {
    const ParamMap none;
    EXPECT_TRUE(stackel::catalog(3, none, 0.0, {1, 1, 1}).display_check()->consistent);
    EXPECT_FALSE(stackel::catalog(3, none, 0.0, {-1, 1, 1}).display_check()->consistent);
    EXPECT_TRUE(stackel::catalog(1, none, 0.0, {-1, 1, 1}).display_check()->consistent);
}

}  // namespace
