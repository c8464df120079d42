#pragma once

#include "crossif/problem.hpp"

#include <span>
#include <vector>

namespace crossif::fdm {

struct StencilEntry {
    NodeIndex node;
    double weight;
};

/// One equation of the finite difference scheme before boundary elimination.
struct StencilRow {
    NodeIndex center;
    std::vector<StencilEntry> entries;
    double rhs = 0.0;

    [[nodiscard]] double weight_sum() const noexcept;
};

/// Five-point scheme a_ij (u_W + u_E + u_S + u_N - 4 u_C) = -h^2 f_ij at an
/// Interior node. Entry order W, E, S, N, C.
StencilRow interior_row(const GridSpec& grid, const CoefficientField& coeff, const SourceFn& f, int i, int j);

/// Flux matching across a vertical interface with one-sided second-order
/// derivatives on each side, a- = a(x_i - h, y_j), a+ = a(x_i + h, y_j):
///   -a- u_{i-2} + 4a- u_{i-1} - 3(a- + a+) u_i + 4a+ u_{i+1} - a+ u_{i+2} = 0
/// Entries ordered i-2 .. i+2.
StencilRow interface_v_row(const GridSpec& grid, const CoefficientField& coeff, int i, int j);

/// Same scheme along y for a node on a horizontal interface; entries j-2 .. j+2.
StencilRow interface_h_row(const GridSpec& grid, const CoefficientField& coeff, int i, int j);

enum class Direction { Backward, Forward };

/// Three-point one-sided first derivative of second order.
/// Backward takes (u_0, u_-1, u_-2), forward takes (u_0, u_+1, u_+2).
double one_sided_dx(std::span<const double, 3> values, double h, Direction direction);

/// Row for any non-boundary, non-intersection node, dispatched by class.
StencilRow row_for(const Problem& problem, int i, int j);

/// Square system over the (N-1)^2 - (m-1)^2 unknowns; generally nonsymmetric.
/// Boundary entries are dropped (u = 0 there).
SparseSystem assemble(const Problem& problem);

/// Field with intersection nodes masked out.
DiscreteSolution solve(const Problem& problem, const SolverConfig& solver);

} // namespace crossif::fdm
