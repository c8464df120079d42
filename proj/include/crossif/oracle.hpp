#pragma once

// Brute-force references for tests. Nothing here reuses the assembly code of
// the fem/fdm modules.

#include "crossif/analysis.hpp"
#include "crossif/problem.hpp"

#include <cstddef>
#include <vector>

namespace crossif::oracle {

/// Row-major dense square matrix.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    explicit DenseMatrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

struct DenseSystem {
    DenseMatrix matrix;
    std::vector<double> rhs;
};

/// Gauss-Legendre nodes and weights on [0, 1].
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
};
QuadratureRule gauss_legendre(int order);

/// Galerkin matrix and load for the bilinear hat basis, integrated with an
/// order x order Gauss rule per element and coefficients looked up by point
/// location. Unknowns are the interior nodes, index (j-1)(N-1) + (i-1).
/// Requires N <= 32 and order >= 3.
DenseSystem dense_assembly(const Problem& problem, int quad_order);

/// Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b);

struct FourierConfig {
    /// Largest odd mode kept in each direction.
    int modes = 2001;

    void validate() const;
};

/// Series solution of -Laplace(u) = 1 on the unit square with u = 0 on the
/// boundary: sum over odd p, q of 16 sin(p pi x) sin(q pi y) / (pi^4 p q (p^2 + q^2)).
double fourier_poisson(double x, double y, const FourierConfig& cfg = {});

/// The same series evaluated at every node of the uniform grid with N intervals.
ScalarField fourier_poisson_grid(int intervals, const FourierConfig& cfg = {});

} // namespace crossif::oracle
