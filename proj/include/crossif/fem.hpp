#pragma once

#include "crossif/problem.hpp"

#include <array>

namespace crossif::fem {

using ElementMatrix = std::array<std::array<double, 4>, 4>;
using ElementVector = std::array<double, 4>;

/// Stiffness of one square element for the tensor-product (bilinear) hat
/// basis, local node order SW, SE, NE, NW. Independent of h in 2D.
ElementMatrix element_stiffness(double a_cell);

/// 2x2 Gauss load vector of f on element [i, i+1] x [j, j+1].
ElementVector element_load(const GridSpec& grid, const SourceFn& f, int i, int j);

/// Galerkin system over all (N-1)^2 interior nodes, intersection nodes included.
SparseSystem assemble(const Problem& problem);

DiscreteSolution solve(const Problem& problem, const SolverConfig& solver);

} // namespace crossif::fem
