#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace crossif {

struct Triplet {
    std::int32_t row;
    std::int32_t col;
    double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row and no explicit zeros are stored.
class CsrMatrix {
public:
    CsrMatrix() = default;

    /// Sums duplicate entries and drops entries that end up exactly zero.
    static CsrMatrix from_triplets(std::int32_t rows, std::int32_t cols, std::vector<Triplet> triplets);
    static CsrMatrix identity(std::int32_t n);

    [[nodiscard]] std::int32_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::int32_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t nonzeros() const noexcept { return values_.size(); }

    [[nodiscard]] std::span<const std::int32_t> row_offsets() const noexcept { return row_offsets_; }
    [[nodiscard]] std::span<const std::int32_t> col_indices() const noexcept { return col_indices_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    [[nodiscard]] std::span<const std::int32_t> row_cols(std::int32_t r) const noexcept {
        return {col_indices_.data() + row_offsets_[r], static_cast<std::size_t>(row_offsets_[r + 1] - row_offsets_[r])};
    }
    [[nodiscard]] std::span<const double> row_values(std::int32_t r) const noexcept {
        return {values_.data() + row_offsets_[r], static_cast<std::size_t>(row_offsets_[r + 1] - row_offsets_[r])};
    }

    /// Entry (r, c), zero when not stored.
    [[nodiscard]] double coeff(std::int32_t r, std::int32_t c) const;

    /// Max |A - A^T| over all entries.
    [[nodiscard]] double asymmetry() const;
    /// Infinity norm (max absolute row sum).
    [[nodiscard]] double norm_inf() const;

    /// Returns a copy with row r multiplied by scale[r].
    [[nodiscard]] CsrMatrix row_scaled(std::span<const double> scale) const;

private:
    std::int32_t rows_ = 0;
    std::int32_t cols_ = 0;
    std::vector<std::int32_t> row_offsets_{0};
    std::vector<std::int32_t> col_indices_;
    std::vector<double> values_;
};

/// y = A x. Throws UsageError on dimension mismatch.
std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x);

enum class SolverMethod { Direct, Cg, Bicgstab };

SolverMethod parse_solver_method(const std::string& name);
const char* to_string(SolverMethod m) noexcept;

struct SolverConfig {
    SolverMethod method = SolverMethod::Direct;
    /// Direct path: bound on the normwise backward error of the returned
    /// solution. Iterative paths: bound on ||b - Ax||_2 / ||b||_2.
    double rel_tol = 1e-12;
    int max_iter = 10000;
    /// Row equilibration for the LU and BiCGSTAB paths; never applied when
    /// the matrix is declared SPD.
    bool equilibrate = true;

    void validate() const;
};

/// Structural hint selecting Cholesky over LU on the direct path.
enum class MatrixKind { General, Spd };

struct SolveResult {
    std::vector<double> x;
    /// ||b - Ax||_2 / ||b||_2 on the original (unscaled) system.
    double relative_residual = 0.0;
    /// ||b - Ax||_inf / (||A||_inf ||x||_inf + ||b||_inf).
    double backward_error = 0.0;
    /// Krylov iterations, or iterative-refinement steps on the direct path.
    int iterations = 0;
};

/// Solves A x = b. Throws SolverError on singular factorization, breakdown
/// or non-convergence, and UsageError on malformed input.
SolveResult factor_solve(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg,
                         MatrixKind kind = MatrixKind::General);

/// Matrix Market coordinate/real/general export with 1-based indices.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);

} // namespace crossif
