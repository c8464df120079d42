#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace crossif {

/// Uniform Cartesian grid on the unit square with N intervals per side,
/// aligned to the m x m partition by interface lines x = p/m, y = q/m.
///
/// Construction enforces N % m == 0, N / m >= 2 and m >= 2.
class GridSpec {
public:
    GridSpec(int intervals, int partitions);

    [[nodiscard]] int intervals() const noexcept { return n_; }
    [[nodiscard]] int partitions() const noexcept { return m_; }
    [[nodiscard]] int cells_per_partition() const noexcept { return n_ / m_; }
    [[nodiscard]] double h() const noexcept { return 1.0 / n_; }
    [[nodiscard]] double coord(int i) const noexcept { return static_cast<double>(i) / n_; }

    /// Number of grid nodes, (N+1)^2.
    [[nodiscard]] std::size_t node_count() const noexcept {
        return static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1);
    }
    [[nodiscard]] std::size_t node_id(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(i);
    }

    /// True when grid line index k lies on an interface line or on the boundary.
    [[nodiscard]] bool on_partition_line(int k) const noexcept {
        return (static_cast<std::int64_t>(k) * m_) % n_ == 0;
    }
    /// Partition (coefficient cell) index of the grid interval [k, k+1].
    [[nodiscard]] int partition_of_interval(int k) const noexcept {
        return static_cast<int>((static_cast<std::int64_t>(k) * m_) / n_);
    }

    bool operator==(const GridSpec&) const = default;

private:
    int n_;
    int m_;
};

enum class PointClass { Boundary, Interior, InterfaceV, InterfaceH, Intersection };

const char* to_string(PointClass c) noexcept;

/// Classifies node (i, j). Nodes on the outer boundary are Boundary even
/// when they also lie on an interface line.
[[nodiscard]] PointClass classify(const GridSpec& grid, int i, int j);

struct NodeIndex {
    int i;
    int j;
    bool operator==(const NodeIndex&) const = default;
};

/// Bijection between unknown indices and non-boundary grid nodes, numbered
/// lexicographically (i fastest, then j). Intersection nodes are skipped
/// when excluded.
class DofMap {
public:
    static constexpr std::int32_t kNoDof = -1;

    DofMap(const GridSpec& grid, bool exclude_intersections);

    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
    [[nodiscard]] bool excludes_intersections() const noexcept { return exclude_intersections_; }

    /// Unknown index of node (i, j), or kNoDof for eliminated/excluded nodes.
    [[nodiscard]] std::int32_t dof(int i, int j) const noexcept { return node_to_dof_[grid_.node_id(i, j)]; }
    [[nodiscard]] NodeIndex node(std::size_t dof) const { return nodes_.at(dof); }

private:
    GridSpec grid_;
    bool exclude_intersections_;
    std::vector<std::int32_t> node_to_dof_;
    std::vector<NodeIndex> nodes_;
};

} // namespace crossif
