#include "crossif/mesh.hpp"

#include "crossif/error.hpp"

#include <string>

namespace crossif {

GridSpec::GridSpec(int intervals, int partitions) : n_(intervals), m_(partitions) {
    if (m_ < 2) {
        throw UsageError("grid: need at least 2 interface partitions per side, got m=" + std::to_string(m_));
    }
    if (n_ <= 0 || n_ % m_ != 0) {
        throw UsageError("grid: N=" + std::to_string(n_) + " is not a positive multiple of m=" + std::to_string(m_));
    }
    if (n_ / m_ < 2) {
        throw UsageError("grid: N/m must be at least 2 (N=" + std::to_string(n_) + ", m=" + std::to_string(m_) + ")");
    }
}

const char* to_string(PointClass c) noexcept {
    switch (c) {
    case PointClass::Boundary: return "boundary";
    case PointClass::Interior: return "interior";
    case PointClass::InterfaceV: return "interface_v";
    case PointClass::InterfaceH: return "interface_h";
    case PointClass::Intersection: return "intersection";
    }
    return "unknown";
}

PointClass classify(const GridSpec& grid, int i, int j) {
    const int n = grid.intervals();
    if (i < 0 || j < 0 || i > n || j > n) {
        throw UsageError("classify: node (" + std::to_string(i) + "," + std::to_string(j) + ") outside 0.." +
                         std::to_string(n));
    }
    if (i == 0 || j == 0 || i == n || j == n) {
        return PointClass::Boundary;
    }
    const bool vertical = grid.on_partition_line(i);
    const bool horizontal = grid.on_partition_line(j);
    if (vertical && horizontal) {
        return PointClass::Intersection;
    }
    if (vertical) {
        return PointClass::InterfaceV;
    }
    if (horizontal) {
        return PointClass::InterfaceH;
    }
    return PointClass::Interior;
}

DofMap::DofMap(const GridSpec& grid, bool exclude_intersections)
    : grid_(grid), exclude_intersections_(exclude_intersections), node_to_dof_(grid.node_count(), kNoDof) {
    const int n = grid.intervals();
    nodes_.reserve(static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n - 1));
    for (int j = 1; j < n; ++j) {
        for (int i = 1; i < n; ++i) {
            if (exclude_intersections && classify(grid, i, j) == PointClass::Intersection) {
                continue;
            }
            node_to_dof_[grid.node_id(i, j)] = static_cast<std::int32_t>(nodes_.size());
            nodes_.push_back({i, j});
        }
    }
}

} // namespace crossif
