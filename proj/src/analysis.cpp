#include "crossif/analysis.hpp"

#include "crossif/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crossif {

ScalarField::ScalarField(int intervals, int partitions)
    : n_(intervals),
      m_(partitions),
      values_(static_cast<std::size_t>(intervals + 1) * static_cast<std::size_t>(intervals + 1), 0.0),
      mask_(values_.size(), 1) {
    if (intervals < 1) {
        throw UsageError("field: need at least one interval");
    }
}

std::size_t ScalarField::index(int i, int j) const {
    if (i < 0 || j < 0 || i > n_ || j > n_) {
        throw UsageError("field: node (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(i);
}

void ScalarField::invalidate(int i, int j) {
    const auto k = index(i, j);
    values_[k] = std::numeric_limits<double>::quiet_NaN();
    mask_[k] = 0;
}

std::size_t ScalarField::masked_count() const noexcept {
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 0));
}

double ScalarField::max_abs() const noexcept {
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (mask_[k] != 0) {
            m = std::max(m, std::abs(values_[k]));
        }
    }
    return m;
}

ScalarField restrict_field(const ScalarField& fine) {
    if (fine.intervals() % 2 != 0) {
        throw UsageError("restrict: fine grid has odd N=" + std::to_string(fine.intervals()));
    }
    const int n = fine.intervals() / 2;
    ScalarField coarse(n, fine.partitions());
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (fine.valid(2 * i, 2 * j)) {
                coarse.set(i, j, fine.value(2 * i, 2 * j));
            } else {
                coarse.invalidate(i, j);
            }
        }
    }
    return coarse;
}

SelfError self_error(const ScalarField& coarse, const ScalarField& fine) {
    if (fine.intervals() != 2 * coarse.intervals()) {
        throw UsageError("self_error: fine N=" + std::to_string(fine.intervals()) + " is not twice coarse N=" +
                         std::to_string(coarse.intervals()));
    }
    if (fine.partitions() != coarse.partitions()) {
        throw UsageError("self_error: fields come from different interface geometries");
    }
    const int n = coarse.intervals();
    const double h = 1.0 / n;
    SelfError err;
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (!coarse.valid(i, j) || !fine.valid(2 * i, 2 * j)) {
                continue;
            }
            const double d = std::abs(coarse.value(i, j) - fine.value(2 * i, 2 * j));
            sum += d * d;
            err.einf = std::max(err.einf, d);
        }
    }
    err.e2 = h * std::sqrt(sum);
    return err;
}

double observed_order(double e_h, double e_h2) {
    if (!(e_h > 0.0) || !(e_h2 > 0.0)) {
        throw UsageError("observed_order: errors must be positive");
    }
    return std::log2(e_h / e_h2);
}

CrossDifference cross_difference(const ScalarField& fem, const ScalarField& fdm) {
    if (fem.intervals() != fdm.intervals() || fem.partitions() != fdm.partitions()) {
        throw UsageError("cross_difference: fields live on different grids");
    }
    const int n = fem.intervals();
    CrossDifference out{ScalarField(n, fem.partitions()), 0.0};
    double max_diff = 0.0;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (fem.valid(i, j) && fdm.valid(i, j)) {
                const double d = std::abs(fem.value(i, j) - fdm.value(i, j));
                out.difference.set(i, j, d);
                max_diff = std::max(max_diff, d);
            } else {
                out.difference.invalidate(i, j);
            }
        }
    }
    const double scale = fem.max_abs();
    out.rel_inf = scale > 0.0 ? max_diff / scale : max_diff;
    return out;
}

std::vector<ConvergenceRow> convergence_table(const std::vector<ScalarField>& solutions) {
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k + 1 < solutions.size(); ++k) {
        const auto err = self_error(solutions[k], solutions[k + 1]);
        ConvergenceRow row;
        row.h = 1.0 / solutions[k].intervals();
        row.e2 = err.e2;
        row.einf = err.einf;
        if (!rows.empty()) {
            const auto& prev = rows.back();
            if (prev.e2 > 0.0 && row.e2 > 0.0) {
                row.order2 = observed_order(prev.e2, row.e2);
            }
            if (prev.einf > 0.0 && row.einf > 0.0) {
                row.orderinf = observed_order(prev.einf, row.einf);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

double round_order(double order) { return std::round(order * 100.0) / 100.0; }

} // namespace crossif
