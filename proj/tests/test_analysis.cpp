#include "crossif/analysis.hpp"
#include "crossif/error.hpp"
#include "crossif/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace crossif {
namespace {

ScalarField random_field(int n, int m, std::mt19937& rng) {
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    ScalarField f(n, m);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            f.set(i, j, value(rng));
        }
    }
    return f;
}

ScalarField constant_field(int n, int m, double c) {
    ScalarField f(n, m);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            f.set(i, j, c);
        }
    }
    return f;
}

TEST(Restrict, ConstantFieldStaysConstant) {
    const auto coarse = restrict_field(constant_field(8, 2, 3.5));
    EXPECT_EQ(coarse.intervals(), 4);
    for (int j = 0; j <= 4; ++j) {
        for (int i = 0; i <= 4; ++i) {
            EXPECT_EQ(coarse.value(i, j), 3.5);
        }
    }
}

TEST(Restrict, InjectsEvenNodes) {
    ScalarField fine(8, 2);
    for (int j = 0; j <= 8; ++j) {
        for (int i = 0; i <= 8; ++i) {
            fine.set(i, j, 10.0 * i + j);
        }
    }
    const auto coarse = restrict_field(fine);
    EXPECT_EQ(coarse.value(1, 1), fine.value(2, 2));
    EXPECT_EQ(coarse.value(3, 2), fine.value(6, 4));
    EXPECT_THROW(restrict_field(ScalarField(7, 1)), UsageError);
}

TEST(Restrict, KeepsIntersectionMask) {
    ScalarField fine(16, 2);
    fine.invalidate(8, 8);
    const auto coarse = restrict_field(fine);
    EXPECT_FALSE(coarse.valid(4, 4));
    EXPECT_EQ(coarse.masked_count(), 1u);
}

TEST(Restrict, ComposesToFactorFour) {
    std::mt19937 rng(7);
    const auto fine = random_field(32, 4, rng);
    const auto twice = restrict_field(restrict_field(fine));
    ASSERT_EQ(twice.intervals(), 8);
    for (int j = 0; j <= 8; ++j) {
        for (int i = 0; i <= 8; ++i) {
            EXPECT_EQ(twice.value(i, j), fine.value(4 * i, 4 * j));
        }
    }
}

TEST(SelfError, IdenticalFieldsGiveZero) {
    std::mt19937 rng(11);
    const auto fine = random_field(16, 2, rng);
    const auto err = self_error(restrict_field(fine), fine);
    EXPECT_EQ(err.e2, 0.0);
    EXPECT_EQ(err.einf, 0.0);
}

TEST(SelfError, GridMismatchIsUsageError) {
    EXPECT_THROW(self_error(ScalarField(4, 2), ScalarField(12, 2)), UsageError);
    EXPECT_THROW(self_error(ScalarField(4, 2), ScalarField(8, 4)), UsageError);
}

TEST(SelfError, KnownDifference) {
    // Difference of 1 at every node of a 4-interval grid: e2 = h * sqrt(25).
    const auto err = self_error(constant_field(4, 2, 1.0), constant_field(8, 2, 0.0));
    EXPECT_DOUBLE_EQ(err.e2, 0.25 * 5.0);
    EXPECT_DOUBLE_EQ(err.einf, 1.0);
}

TEST(SelfError, NormAxiomsOnRandomFields) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = random_field(8, 2, rng);
        const auto v = random_field(16, 2, rng);
        const auto w = random_field(16, 2, rng);
        const auto uv = self_error(u, v);
        EXPECT_GE(uv.e2, 0.0);
        EXPECT_GE(uv.einf, 0.0);

        // ||u - w|| <= ||u - v|| + ||v - w|| with v, w compared on the coarse nodes.
        const auto uw = self_error(u, w);
        const auto vw = self_error(restrict_field(v), w);
        EXPECT_LE(uw.e2, uv.e2 + vw.e2 + 1e-14);
        EXPECT_LE(uw.einf, uv.einf + vw.einf + 1e-14);

        // Negating both fields leaves the error unchanged.
        ScalarField nu(8, 2);
        ScalarField nv(16, 2);
        for (int j = 0; j <= 16; ++j) {
            for (int i = 0; i <= 16; ++i) {
                nv.set(i, j, -v.value(i, j));
                if (i <= 8 && j <= 8) {
                    nu.set(i, j, -u.value(i, j));
                }
            }
        }
        const auto neg = self_error(nu, nv);
        EXPECT_EQ(neg.e2, uv.e2);
        EXPECT_EQ(neg.einf, uv.einf);
    }
}

TEST(SelfError, SkipsMaskedNodesWithoutReadingThem) {
    // Masked nodes hold NaN; reading one would poison both norms.
    ScalarField coarse = constant_field(4, 2, 1.0);
    ScalarField fine = constant_field(8, 2, 1.0);
    coarse.invalidate(2, 2);
    fine.invalidate(4, 4);
    EXPECT_TRUE(std::isnan(coarse.value(2, 2)));
    const auto err = self_error(coarse, fine);
    EXPECT_EQ(err.e2, 0.0);
    EXPECT_EQ(err.einf, 0.0);
}

TEST(ObservedOrder, Examples) {
    EXPECT_DOUBLE_EQ(observed_order(4.0, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(round_order(observed_order(1.4205E+00, 3.1139E-01)), 2.19);
    EXPECT_DOUBLE_EQ(round_order(observed_order(2.5237E+00, 1.5017E+00)), 0.75);
    EXPECT_THROW(observed_order(0.0, 1.0), UsageError);
    EXPECT_THROW(observed_order(1.0, -1.0), UsageError);
}

TEST(CrossDifference, IdenticalFieldsGiveZero) {
    std::mt19937 rng(5);
    const auto u = random_field(8, 2, rng);
    const auto d = cross_difference(u, u);
    EXPECT_EQ(d.rel_inf, 0.0);
    EXPECT_THROW(cross_difference(ScalarField(8, 2), ScalarField(16, 2)), UsageError);
}

TEST(CrossDifference, RelativeToFemMaximum) {
    auto fem = constant_field(4, 2, 2.0);
    auto fdm = constant_field(4, 2, 2.5);
    fdm.invalidate(2, 2);
    fem.set(2, 2, 4.0);
    const auto d = cross_difference(fem, fdm);
    EXPECT_DOUBLE_EQ(d.rel_inf, 0.5 / 4.0);
    EXPECT_FALSE(d.difference.valid(2, 2));
}

TEST(ConvergenceTable, FirstRowHasNoOrder) {
    std::vector<ScalarField> sols;
    for (int k = 2; k <= 5; ++k) {
        const int n = 1 << k;
        ScalarField f(n, 2);
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n; ++i) {
                // Error that shrinks by 4 per level.
                f.set(i, j, 1.0 + std::pow(4.0, -k));
            }
        }
        sols.push_back(std::move(f));
    }
    const auto rows = convergence_table(sols);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_FALSE(rows[0].order2.has_value());
    EXPECT_FALSE(rows[0].orderinf.has_value());
    EXPECT_NEAR(*rows[1].orderinf, 2.0, 1e-9);
    // e2 carries the (N+1)/N node-count factor: N = 8 -> 16 adds log2(18/17).
    EXPECT_NEAR(*rows[2].order2, 2.0 + std::log2(18.0 / 17.0), 1e-9);
    EXPECT_DOUBLE_EQ(rows[0].h, 0.25);
}

TEST(SelfError, HighContrastTablePairs) {
    // Published first-row self errors: fem pair for the m=2 field, fdm pair for m=16.
    const auto ex1 = find_preset("ex1").coeff;
    const auto fem = self_error(solve_level(ex1, Method::Fem, 2, {}).field, solve_level(ex1, Method::Fem, 3, {}).field);
    EXPECT_NEAR(fem.e2, 1.4205E+00, 1.4205E+00 * 5e-5);
    EXPECT_NEAR(fem.einf, 4.0179E+00, 4.0179E+00 * 5e-5);

    const auto ex5 = find_preset("ex5").coeff;
    const auto fdm = self_error(solve_level(ex5, Method::Fdm, 5, {}).field, solve_level(ex5, Method::Fdm, 6, {}).field);
    EXPECT_NEAR(fdm.e2, 4.7871E+00, 4.7871E+00 * 5e-5);
    EXPECT_NEAR(fdm.einf, 1.0605E+01, 1.0605E+01 * 5e-5);
}

} // namespace
} // namespace crossif
