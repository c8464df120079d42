#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace crossif {

/// Nodal values on the (N+1) x (N+1) grid with a validity mask. Masked
/// nodes (FDM intersection nodes) hold NaN so that any accidental read
/// poisons the result.
class ScalarField {
public:
    ScalarField(int intervals, int partitions);

    [[nodiscard]] int intervals() const noexcept { return n_; }
    /// Interface partitions m of the geometry the field was computed on, 0 if none.
    [[nodiscard]] int partitions() const noexcept { return m_; }

    [[nodiscard]] double value(int i, int j) const { return values_[index(i, j)]; }
    [[nodiscard]] bool valid(int i, int j) const { return mask_[index(i, j)] != 0; }

    void set(int i, int j, double v) {
        values_[index(i, j)] = v;
        mask_[index(i, j)] = 1;
    }
    void invalidate(int i, int j);

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t masked_count() const noexcept;

    /// Largest |value| over valid nodes.
    [[nodiscard]] double max_abs() const noexcept;

private:
    [[nodiscard]] std::size_t index(int i, int j) const;

    int n_;
    int m_;
    std::vector<double> values_;
    std::vector<unsigned char> mask_;
};

/// Injection onto the grid with half the resolution: coarse(i,j) = fine(2i,2j).
ScalarField restrict_field(const ScalarField& fine);

struct SelfError {
    double e2 = 0.0;
    double einf = 0.0;
};

/// Self-convergence error between a solution at spacing h and one at h/2,
/// sampled at the coarse nodes. The l2 norm is h * sqrt(sum of squares);
/// both norms run over nodes valid in both fields.
SelfError self_error(const ScalarField& coarse, const ScalarField& fine);

/// log2(e_h / e_h2); both errors must be positive.
double observed_order(double e_h, double e_h2);

struct CrossDifference {
    ScalarField difference;
    /// max |uE - uD| / max |uE|
    double rel_inf = 0.0;
};

/// Pointwise |uE - uD| over jointly valid nodes.
CrossDifference cross_difference(const ScalarField& fem, const ScalarField& fdm);

struct ConvergenceRow {
    double h = 0.0;
    double e2 = 0.0;
    std::optional<double> order2;
    double einf = 0.0;
    std::optional<double> orderinf;
};

/// Builds table rows from solutions at successively halved spacings:
/// row k compares solutions[k] with solutions[k+1].
std::vector<ConvergenceRow> convergence_table(const std::vector<ScalarField>& solutions);

/// Order rounded to two decimals, the precision tables report.
double round_order(double order);

} // namespace crossif
