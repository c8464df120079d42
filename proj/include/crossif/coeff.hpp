#pragma once

#include "crossif/mesh.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace crossif {

/// Positive piecewise-constant coefficient over the m x m interface cells.
///
/// Cell (r, c) covers (c/m, (c+1)/m) x (r/m, (r+1)/m); rows are stored
/// bottom-to-top, i.e. r = 0 is the row touching y = 0. The file format
/// uses the same orientation.
class CoefficientField {
public:
    /// Takes rows bottom-to-top; every row must have as many entries as there
    /// are rows and every entry must be strictly positive.
    static CoefficientField from_matrix(const std::vector<std::vector<double>>& rows_bottom_to_top);

    /// Alternating pattern with the bottom-left cell (0, 0) set to a_even.
    static CoefficientField checkerboard(int m, double a_even, double a_odd);

    static CoefficientField uniform(int m, double value) { return checkerboard(m, value, value); }

    [[nodiscard]] int partitions() const noexcept { return m_; }
    [[nodiscard]] double at(int row, int col) const;

    /// Value at a point strictly inside a cell. Points with x*m or y*m
    /// integral (interface lines, cell edges) are rejected.
    [[nodiscard]] double sample(double x, double y) const;

    /// Exact integer form of sample() for grid node (i, j); the node must not
    /// lie on any partition line.
    [[nodiscard]] double at_node(const GridSpec& grid, int i, int j) const;

    /// Value on grid element [i, i+1] x [j, j+1].
    [[nodiscard]] double on_element(const GridSpec& grid, int i, int j) const {
        return at(grid.partition_of_interval(j), grid.partition_of_interval(i));
    }

    [[nodiscard]] CoefficientField scaled(double factor) const;
    /// Reflection across the diagonal y = x.
    [[nodiscard]] CoefficientField transposed() const;

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    bool operator==(const CoefficientField&) const = default;

private:
    CoefficientField(int m, std::vector<double> values);

    int m_;
    std::vector<double> values_;
};

/// Parses `{"m": <int>, "rows_bottom_to_top": [[...], ...]}`.
CoefficientField parse_coefficient_json(const std::string& text);
CoefficientField load_coefficient_file(const std::filesystem::path& path);
std::string to_coefficient_json(const CoefficientField& field);

} // namespace crossif
