#pragma once

#include "crossif/analysis.hpp"
#include "crossif/coeff.hpp"
#include "crossif/mesh.hpp"
#include "crossif/sparse.hpp"

#include <functional>
#include <vector>

namespace crossif {

/// Source term f(x, y), continuous on the closed unit square.
using SourceFn = std::function<double(double, double)>;

inline SourceFn constant_source(double value) {
    return [value](double, double) { return value; };
}

/// Grid, coefficient and source shared by both discretizations.
struct Problem {
    GridSpec grid;
    CoefficientField coeff;
    SourceFn f;

    /// Throws UsageError when grid and coefficient disagree on m or f is empty.
    void validate() const;
};

/// Assembled linear system over the unknowns of a DofMap. Dirichlet values
/// are eliminated, so rows and columns correspond to dofs only.
struct SparseSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    DofMap dofs;
};

/// Nodal solution plus the diagnostics of the linear solve that produced it.
struct DiscreteSolution {
    ScalarField field;
    std::size_t unknowns = 0;
    double relative_residual = 0.0;
    double backward_error = 0.0;
    int iterations = 0;
};

} // namespace crossif
