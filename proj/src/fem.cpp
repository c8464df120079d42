#include "crossif/fem.hpp"

#include "crossif/error.hpp"

#include <array>
#include <cmath>

namespace crossif {

void Problem::validate() const {
    if (grid.partitions() != coeff.partitions()) {
        throw UsageError("problem: grid has m=" + std::to_string(grid.partitions()) + " but coefficient has m=" +
                         std::to_string(coeff.partitions()));
    }
    if (!f) {
        throw UsageError("problem: source term is empty");
    }
}

namespace fem {

namespace {

// Six times the integral of grad(phi_p) . grad(phi_q) over a square, bilinear
// hats, SW SE NE NW.
constexpr std::array<std::array<double, 4>, 4> kReferenceStiffness6 = {{
    {{4.0, -1.0, -2.0, -1.0}},
    {{-1.0, 4.0, -1.0, -2.0}},
    {{-2.0, -1.0, 4.0, -1.0}},
    {{-1.0, -2.0, -1.0, 4.0}},
}};

} // namespace

ElementMatrix element_stiffness(double a_cell) {
    if (!(a_cell > 0.0) || !std::isfinite(a_cell)) {
        throw UsageError("element_stiffness: coefficient must be positive");
    }
    ElementMatrix k{};
    for (std::size_t p = 0; p < 4; ++p) {
        for (std::size_t q = 0; q < 4; ++q) {
            k[p][q] = a_cell * kReferenceStiffness6[p][q] / 6.0;
        }
    }
    return k;
}

ElementVector element_load(const GridSpec& grid, const SourceFn& f, int i, int j) {
    const double h = grid.h();
    const double x0 = grid.coord(i);
    const double y0 = grid.coord(j);
    const double g = 0.5 / std::sqrt(3.0);
    const std::array<double, 2> ref = {0.5 - g, 0.5 + g};

    ElementVector load{};
    for (double s : ref) {
        for (double t : ref) {
            // Weight 1/4 per point on the unit square, times the element area.
            const double w = 0.25 * h * h * f(x0 + s * h, y0 + t * h);
            load[0] += w * (1.0 - s) * (1.0 - t);
            load[1] += w * s * (1.0 - t);
            load[2] += w * s * t;
            load[3] += w * (1.0 - s) * t;
        }
    }
    return load;
}

SparseSystem assemble(const Problem& problem) {
    problem.validate();
    const auto& grid = problem.grid;
    const int n = grid.intervals();
    DofMap dofs(grid, false);

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * 16);
    std::vector<double> rhs(dofs.size(), 0.0);

    for (int ey = 0; ey < n; ++ey) {
        for (int ex = 0; ex < n; ++ex) {
            const auto k = element_stiffness(problem.coeff.on_element(grid, ex, ey));
            const auto load = element_load(grid, problem.f, ex, ey);
            const std::array<std::int32_t, 4> local = {
                dofs.dof(ex, ey),
                dofs.dof(ex + 1, ey),
                dofs.dof(ex + 1, ey + 1),
                dofs.dof(ex, ey + 1),
            };
            for (std::size_t p = 0; p < 4; ++p) {
                if (local[p] == DofMap::kNoDof) {
                    continue;
                }
                rhs[static_cast<std::size_t>(local[p])] += load[p];
                for (std::size_t q = 0; q < 4; ++q) {
                    if (local[q] != DofMap::kNoDof) {
                        triplets.push_back({local[p], local[q], k[p][q]});
                    }
                }
            }
        }
    }
    const auto size = static_cast<std::int32_t>(dofs.size());
    return {CsrMatrix::from_triplets(size, size, std::move(triplets)), std::move(rhs), std::move(dofs)};
}

DiscreteSolution solve(const Problem& problem, const SolverConfig& solver) {
    const auto system = assemble(problem);
    const auto kind = solver.method == SolverMethod::Bicgstab ? MatrixKind::General : MatrixKind::Spd;
    const auto result = factor_solve(system.matrix, system.rhs, solver, kind);

    const int n = problem.grid.intervals();
    DiscreteSolution out{ScalarField(n, problem.grid.partitions()), system.dofs.size(), result.relative_residual,
                         result.backward_error, result.iterations};
    for (std::size_t d = 0; d < system.dofs.size(); ++d) {
        const auto node = system.dofs.node(d);
        out.field.set(node.i, node.j, result.x[d]);
    }
    return out;
}

} // namespace fem
} // namespace crossif
