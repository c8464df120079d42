#include "crossif/fdm.hpp"

#include "crossif/error.hpp"

#include <stdexcept>
#include <string>

namespace crossif::fdm {

namespace {

void require_class(const GridSpec& grid, int i, int j, PointClass expected, const char* who) {
    const auto actual = classify(grid, i, j);
    if (actual != expected) {
        throw UsageError(std::string(who) + ": node (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                         to_string(actual) + ", expected " + to_string(expected));
    }
}

StencilRow flux_row(NodeIndex center, double a_minus, double a_plus, NodeIndex step) {
    StencilRow row{center, {}, 0.0};
    const double w[5] = {-a_minus, 4.0 * a_minus, -3.0 * (a_minus + a_plus), 4.0 * a_plus, -a_plus};
    for (int k = -2; k <= 2; ++k) {
        row.entries.push_back({{center.i + k * step.i, center.j + k * step.j}, w[k + 2]});
    }
    return row;
}

} // namespace

double StencilRow::weight_sum() const noexcept {
    double s = 0.0;
    for (const auto& e : entries) {
        s += e.weight;
    }
    return s;
}

StencilRow interior_row(const GridSpec& grid, const CoefficientField& coeff, const SourceFn& f, int i, int j) {
    require_class(grid, i, j, PointClass::Interior, "interior_row");
    const double a = coeff.at_node(grid, i, j);
    const double h = grid.h();
    return {{i, j},
            {{{i - 1, j}, a}, {{i + 1, j}, a}, {{i, j - 1}, a}, {{i, j + 1}, a}, {{i, j}, -4.0 * a}},
            -h * h * f(grid.coord(i), grid.coord(j))};
}

StencilRow interface_v_row(const GridSpec& grid, const CoefficientField& coeff, int i, int j) {
    require_class(grid, i, j, PointClass::InterfaceV, "interface_v_row");
    return flux_row({i, j}, coeff.at_node(grid, i - 1, j), coeff.at_node(grid, i + 1, j), {1, 0});
}

StencilRow interface_h_row(const GridSpec& grid, const CoefficientField& coeff, int i, int j) {
    require_class(grid, i, j, PointClass::InterfaceH, "interface_h_row");
    return flux_row({i, j}, coeff.at_node(grid, i, j - 1), coeff.at_node(grid, i, j + 1), {0, 1});
}

double one_sided_dx(std::span<const double, 3> values, double h, Direction direction) {
    if (!(h > 0.0)) {
        throw UsageError("one_sided_dx: h must be positive");
    }
    const double d = 3.0 * values[0] - 4.0 * values[1] + values[2];
    return (direction == Direction::Backward ? d : -d) / (2.0 * h);
}

StencilRow row_for(const Problem& problem, int i, int j) {
    switch (classify(problem.grid, i, j)) {
    case PointClass::Interior: return interior_row(problem.grid, problem.coeff, problem.f, i, j);
    case PointClass::InterfaceV: return interface_v_row(problem.grid, problem.coeff, i, j);
    case PointClass::InterfaceH: return interface_h_row(problem.grid, problem.coeff, i, j);
    case PointClass::Boundary:
    case PointClass::Intersection: break;
    }
    throw UsageError("fdm: no equation at node (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

SparseSystem assemble(const Problem& problem) {
    problem.validate();
    const auto& grid = problem.grid;
    DofMap dofs(grid, true);
    const auto size = static_cast<std::int32_t>(dofs.size());

    std::vector<Triplet> triplets;
    triplets.reserve(dofs.size() * 5);
    std::vector<double> rhs(dofs.size(), 0.0);
    for (std::int32_t r = 0; r < size; ++r) {
        const auto node = dofs.node(static_cast<std::size_t>(r));
        const auto row = row_for(problem, node.i, node.j);
        rhs[static_cast<std::size_t>(r)] = row.rhs;
        for (const auto& e : row.entries) {
            const auto cls = classify(grid, e.node.i, e.node.j);
            if (cls == PointClass::Boundary) {
                continue;
            }
            if (cls == PointClass::Intersection) {
                throw std::logic_error("fdm: stencil at (" + std::to_string(node.i) + "," + std::to_string(node.j) +
                                       ") reaches an intersection node");
            }
            triplets.push_back({r, dofs.dof(e.node.i, e.node.j), e.weight});
        }
    }
    return {CsrMatrix::from_triplets(size, size, std::move(triplets)), std::move(rhs), std::move(dofs)};
}

DiscreteSolution solve(const Problem& problem, const SolverConfig& solver) {
    const auto system = assemble(problem);
    const auto result = factor_solve(system.matrix, system.rhs, solver, MatrixKind::General);

    const auto& grid = problem.grid;
    const int n = grid.intervals();
    DiscreteSolution out{ScalarField(n, grid.partitions()), system.dofs.size(), result.relative_residual,
                         result.backward_error, result.iterations};
    for (std::size_t d = 0; d < system.dofs.size(); ++d) {
        const auto node = system.dofs.node(d);
        out.field.set(node.i, node.j, result.x[d]);
    }
    for (int j = 1; j < n; ++j) {
        for (int i = 1; i < n; ++i) {
            if (classify(grid, i, j) == PointClass::Intersection) {
                out.field.invalidate(i, j);
            }
        }
    }
    return out;
}

} // namespace crossif::fdm
