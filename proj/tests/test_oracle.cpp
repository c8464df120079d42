#include "crossif/error.hpp"
#include "crossif/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace crossif {
namespace {

TEST(Fourier, VanishesOnBoundary) {
    for (double t : {0.0, 0.1, 0.5, 0.93, 1.0}) {
        EXPECT_NEAR(oracle::fourier_poisson(0.0, t), 0.0, 1e-15);
        EXPECT_NEAR(oracle::fourier_poisson(1.0, t), 0.0, 1e-15);
        EXPECT_NEAR(oracle::fourier_poisson(t, 0.0), 0.0, 1e-15);
        EXPECT_NEAR(oracle::fourier_poisson(t, 1.0), 0.0, 1e-15);
    }
}

TEST(Fourier, CenterValue) {
    const double center = oracle::fourier_poisson(0.5, 0.5);
    EXPECT_NEAR(center, 0.07367, 5e-6);
    EXPECT_LE(std::abs(oracle::fourier_poisson(0.5, 0.5, {4003}) - center), 1e-6);
}

TEST(Fourier, Symmetries) {
    for (double x : {0.1, 0.3, 0.45}) {
        for (double y : {0.2, 0.7}) {
            const double v = oracle::fourier_poisson(x, y);
            EXPECT_NEAR(oracle::fourier_poisson(1.0 - x, y), v, 1e-14);
            EXPECT_NEAR(oracle::fourier_poisson(y, x), v, 1e-14);
        }
    }
}

TEST(Fourier, GridMatchesPointwiseSeries) {
    const auto grid = oracle::fourier_poisson_grid(16, {201});
    EXPECT_EQ(grid.intervals(), 16);
    EXPECT_EQ(grid.masked_count(), 0u);
    for (int j = 0; j <= 16; j += 3) {
        for (int i = 0; i <= 16; i += 5) {
            EXPECT_NEAR(grid.value(i, j), oracle::fourier_poisson(i / 16.0, j / 16.0, {201}), 1e-14);
        }
    }
}

TEST(Fourier, CutoffDoublingIsBelowOneMillionth) {
    for (int n : {32, 256}) {
        const auto a = oracle::fourier_poisson_grid(n, {2001});
        const auto b = oracle::fourier_poisson_grid(n, {4003});
        double worst = 0.0;
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n; ++i) {
                worst = std::max(worst, std::abs(a.value(i, j) - b.value(i, j)));
            }
        }
        EXPECT_LE(worst, 1e-6) << "N=" << n;
    }
}

TEST(Fourier, SatisfiesPoissonEquationAwayFromBoundary) {
    // Nine-point fourth-order Laplacian at a few interior points.
    const double h = 1.0 / 64.0;
    for (double x : {0.25, 0.5}) {
        for (double y : {0.375, 0.5}) {
            const auto u = [&](int dx, int dy) { return oracle::fourier_poisson(x + dx * h, y + dy * h, {4003}); };
            const double lap = (4.0 * (u(1, 0) + u(-1, 0) + u(0, 1) + u(0, -1)) + u(1, 1) + u(1, -1) + u(-1, 1) +
                                u(-1, -1) - 20.0 * u(0, 0)) /
                               (6.0 * h * h);
            EXPECT_NEAR(-lap, 1.0, 1e-3) << x << "," << y;
        }
    }
}

TEST(Fourier, RejectsBadCutoff) {
    EXPECT_THROW(oracle::fourier_poisson(0.5, 0.5, {4}), UsageError);
    EXPECT_THROW(oracle::fourier_poisson(0.5, 0.5, {1}), UsageError);
    EXPECT_THROW(oracle::fourier_poisson_grid(8, {2000}), UsageError);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int order = 1; order <= 6; ++order) {
        const auto rule = oracle::gauss_legendre(order);
        ASSERT_EQ(rule.points.size(), static_cast<std::size_t>(order));
        for (int deg = 0; deg <= 2 * order - 1; ++deg) {
            double sum = 0.0;
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                sum += rule.weights[q] * std::pow(rule.points[q], deg);
            }
            EXPECT_NEAR(sum, 1.0 / (deg + 1), 1e-14) << order << " " << deg;
        }
    }
    EXPECT_THROW(oracle::gauss_legendre(0), UsageError);
}

TEST(DenseAssembly, QuadratureOrderIndependent) {
    const Problem problem{GridSpec(16, 4), CoefficientField::checkerboard(4, 1e3, 1e-3),
                          [](double x, double y) { return 1.0 + x * y; }};
    const auto a = oracle::dense_assembly(problem, 3);
    const auto b = oracle::dense_assembly(problem, 5);
    ASSERT_EQ(a.matrix.n, 225u);
    for (std::size_t k = 0; k < a.matrix.data.size(); ++k) {
        EXPECT_NEAR(a.matrix.data[k], b.matrix.data[k], 1e-12);
    }
    for (std::size_t k = 0; k < a.rhs.size(); ++k) {
        EXPECT_NEAR(a.rhs[k], b.rhs[k], 1e-15);
    }
}

TEST(DenseAssembly, SmallestGridUnitCoefficient) {
    const Problem problem{GridSpec(4, 2), CoefficientField::uniform(2, 1.0), constant_source(1.0)};
    const auto sys = oracle::dense_assembly(problem, 3);
    ASSERT_EQ(sys.matrix.n, 9u);
    // Bilinear stiffness on a uniform grid: 8/3 on the diagonal, -1/3 to all
    // eight neighbours.
    EXPECT_NEAR(sys.matrix(4, 4), 8.0 / 3.0, 1e-14);
    EXPECT_NEAR(sys.matrix(4, 1), -1.0 / 3.0, 1e-14);
    EXPECT_NEAR(sys.matrix(4, 0), -1.0 / 3.0, 1e-14);
    EXPECT_NEAR(sys.matrix(0, 8), 0.0, 1e-14);
    EXPECT_NEAR(sys.rhs[4], 1.0 / 16.0, 1e-15);
}

TEST(DenseAssembly, Preconditions) {
    const Problem big{GridSpec(64, 2), CoefficientField::uniform(2, 1.0), constant_source(1.0)};
    EXPECT_THROW(oracle::dense_assembly(big, 3), UsageError);
    const Problem small{GridSpec(8, 2), CoefficientField::uniform(2, 1.0), constant_source(1.0)};
    EXPECT_THROW(oracle::dense_assembly(small, 2), UsageError);
    EXPECT_THROW(CoefficientField::from_matrix({{1.0, 0.0}, {1.0, 1.0}}), UsageError);
}

TEST(DenseSolve, SolvesWithPivoting) {
    oracle::DenseMatrix a(3);
    const double vals[9] = {0, 2, 1, 1, 1, 1, 4, -1, 3};
    for (std::size_t k = 0; k < 9; ++k) {
        a.data[k] = vals[k];
    }
    const auto x = oracle::dense_solve(a, {7, 6, 11});
    EXPECT_NEAR(x[0], 1.0, 1e-14);
    EXPECT_NEAR(x[1], 2.0, 1e-14);
    EXPECT_NEAR(x[2], 3.0, 1e-14);
}

TEST(DenseSolve, SingularRejected) {
    oracle::DenseMatrix a(2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 2;
    a(1, 1) = 4;
    EXPECT_THROW(oracle::dense_solve(a, {1, 2}), SolverError);
}

} // namespace
} // namespace crossif
