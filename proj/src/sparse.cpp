#include "crossif/sparse.hpp"

#include "crossif/error.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace crossif {

namespace {

using EigenCsr = Eigen::SparseMatrix<double, Eigen::RowMajor, std::int32_t>;
using EigenCsc = Eigen::SparseMatrix<double, Eigen::ColMajor, std::int32_t>;
using EigenVec = Eigen::VectorXd;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k] * b[k];
    }
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

std::vector<double> residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b) {
    auto r = matvec(a, x);
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = b[k] - r[k];
    }
    return r;
}

void fill_residual_measures(const CsrMatrix& a, std::span<const double> b, SolveResult& out) {
    const auto r = residual(a, out.x, b);
    const double bnorm = norm2(b);
    out.relative_residual = bnorm > 0.0 ? norm2(r) / bnorm : norm2(r);
    const double denom = a.norm_inf() * norm_inf(out.x) + norm_inf(b);
    out.backward_error = denom > 0.0 ? norm_inf(r) / denom : 0.0;
}

EigenCsc to_eigen(const CsrMatrix& a) {
    const Eigen::Map<const EigenCsr> view(a.rows(), a.cols(), static_cast<std::int32_t>(a.nonzeros()),
                                          a.row_offsets().data(), a.col_indices().data(), a.values().data());
    EigenCsc csc = view;
    csc.makeCompressed();
    return csc;
}

std::vector<double> equilibration_scales(const CsrMatrix& a) {
    std::vector<double> scale(static_cast<std::size_t>(a.rows()), 1.0);
    for (std::int32_t r = 0; r < a.rows(); ++r) {
        const double m = norm_inf(a.row_values(r));
        if (m > 0.0) {
            scale[static_cast<std::size_t>(r)] = 1.0 / m;
        }
    }
    return scale;
}

// b - A x accumulated in extended precision.
std::vector<double> residual_extended(const CsrMatrix& a, std::span<const double> x, std::span<const double> b) {
    std::vector<double> r(static_cast<std::size_t>(a.rows()));
    for (std::int32_t row = 0; row < a.rows(); ++row) {
        long double acc = b[static_cast<std::size_t>(row)];
        const auto cols = a.row_cols(row);
        const auto vals = a.row_values(row);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            acc -= static_cast<long double>(vals[k]) * x[static_cast<std::size_t>(cols[k])];
        }
        r[static_cast<std::size_t>(row)] = static_cast<double>(acc);
    }
    return r;
}

// Factor once, then refine x with extended-precision residuals of the
// unscaled system until the correction reaches rounding level or stalls.
template <typename Factorization>
SolveResult direct_refined(const Factorization& factor, const CsrMatrix& a, std::span<const double> b,
                           std::span<const double> row_scale) {
    auto scaled = [&](const std::vector<double>& v) {
        EigenVec out(static_cast<Eigen::Index>(v.size()));
        for (std::size_t k = 0; k < v.size(); ++k) {
            out[static_cast<Eigen::Index>(k)] = row_scale.empty() ? v[k] : v[k] * row_scale[k];
        }
        return out;
    };

    const std::vector<double> b_copy(b.begin(), b.end());
    EigenVec sol = factor.solve(scaled(b_copy));
    SolveResult result;
    result.x.assign(sol.data(), sol.data() + sol.size());

    constexpr int kMaxRefinement = 5;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    double prev_step = std::numeric_limits<double>::infinity();
    for (int step = 0; step < kMaxRefinement; ++step) {
        const EigenVec dx = factor.solve(scaled(residual_extended(a, result.x, b)));
        const double step_norm = dx.lpNorm<Eigen::Infinity>();
        if (!std::isfinite(step_norm) || step_norm > 0.5 * prev_step) {
            break;
        }
        for (std::size_t k = 0; k < result.x.size(); ++k) {
            result.x[k] += dx[static_cast<Eigen::Index>(k)];
        }
        result.iterations = step + 1;
        if (step_norm <= kEps * norm_inf(result.x)) {
            break;
        }
        prev_step = step_norm;
    }
    fill_residual_measures(a, b, result);
    return result;
}

SolveResult solve_direct(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg, MatrixKind kind) {
    SolveResult result;
    if (kind == MatrixKind::Spd) {
        Eigen::SimplicialLDLT<EigenCsc, Eigen::Lower, Eigen::AMDOrdering<std::int32_t>> ldlt;
        ldlt.compute(to_eigen(a));
        if (ldlt.info() != Eigen::Success) {
            throw SolverError("direct: Cholesky factorization failed (matrix not SPD?)",
                              std::numeric_limits<double>::infinity());
        }
        const auto d = ldlt.vectorD();
        if ((d.array() <= 0.0).any()) {
            throw SolverError("direct: nonpositive pivot in LDL^T factorization", std::numeric_limits<double>::infinity());
        }
        result = direct_refined(ldlt, a, b, {});
    } else {
        std::vector<double> scale;
        CsrMatrix work = a;
        if (cfg.equilibrate) {
            scale = equilibration_scales(a);
            work = a.row_scaled(scale);
        }
        Eigen::SparseLU<EigenCsc, Eigen::COLAMDOrdering<std::int32_t>> lu;
        lu.compute(to_eigen(work));
        if (lu.info() != Eigen::Success) {
            throw SolverError("direct: LU factorization failed: " + lu.lastErrorMessage(),
                              std::numeric_limits<double>::infinity());
        }
        result = direct_refined(lu, a, b, scale);
    }
    if (!std::isfinite(result.backward_error) || result.backward_error > cfg.rel_tol) {
        std::ostringstream os;
        os << "direct: backward error " << result.backward_error << " exceeds tolerance " << cfg.rel_tol;
        throw SolverError(os.str(), result.backward_error);
    }
    return result;
}

// Jacobi-preconditioned conjugate gradients.
SolveResult solve_cg(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg) {
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<double> inv_diag(n);
    for (std::int32_t r = 0; r < a.rows(); ++r) {
        const double d = a.coeff(r, r);
        if (!(d > 0.0)) {
            throw SolverError("cg: nonpositive diagonal entry", std::numeric_limits<double>::infinity());
        }
        inv_diag[static_cast<std::size_t>(r)] = 1.0 / d;
    }

    SolveResult result;
    result.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        return result;
    }
    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = inv_diag[k] * r[k];
    }
    std::vector<double> p = z;
    double rz = dot(r, z);
    double rel = 1.0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const auto ap = matvec(a, p);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            throw SolverError("cg: breakdown (p^T A p <= 0)", rel);
        }
        const double alpha = rz / pap;
        for (std::size_t k = 0; k < n; ++k) {
            result.x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        rel = norm2(r) / bnorm;
        if (rel <= cfg.rel_tol) {
            result.iterations = it;
            fill_residual_measures(a, b, result);
            return result;
        }
        for (std::size_t k = 0; k < n; ++k) {
            z[k] = inv_diag[k] * r[k];
        }
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t k = 0; k < n; ++k) {
            p[k] = z[k] + beta * p[k];
        }
    }
    std::ostringstream os;
    os << "cg: no convergence in " << cfg.max_iter << " iterations (relative residual " << rel << ")";
    throw SolverError(os.str(), rel);
}

/// ILU(0): incomplete LU restricted to the sparsity pattern of A.
class Ilu0 {
public:
    explicit Ilu0(const CsrMatrix& a)
        : offsets_(a.row_offsets().begin(), a.row_offsets().end()),
          cols_(a.col_indices().begin(), a.col_indices().end()),
          lu_(a.values().begin(), a.values().end()),
          diag_(static_cast<std::size_t>(a.rows())) {
        const std::int32_t n = a.rows();
        for (std::int32_t r = 0; r < n; ++r) {
            const auto begin = cols_.begin() + offsets_[r];
            const auto end = cols_.begin() + offsets_[r + 1];
            const auto it = std::lower_bound(begin, end, r);
            if (it == end || *it != r) {
                throw SolverError("ilu0: missing diagonal entry in row " + std::to_string(r),
                                  std::numeric_limits<double>::infinity());
            }
            diag_[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(it - cols_.begin());
        }
        std::vector<std::int32_t> pos(static_cast<std::size_t>(n), -1);
        for (std::int32_t r = 0; r < n; ++r) {
            for (auto q = offsets_[r]; q < offsets_[r + 1]; ++q) {
                pos[static_cast<std::size_t>(cols_[static_cast<std::size_t>(q)])] = q;
            }
            for (auto q = offsets_[r]; q < diag_[static_cast<std::size_t>(r)]; ++q) {
                const auto k = cols_[static_cast<std::size_t>(q)];
                const double pivot = lu_[static_cast<std::size_t>(diag_[static_cast<std::size_t>(k)])];
                if (pivot == 0.0) {
                    throw SolverError("ilu0: zero pivot", std::numeric_limits<double>::infinity());
                }
                const double factor = lu_[static_cast<std::size_t>(q)] / pivot;
                lu_[static_cast<std::size_t>(q)] = factor;
                for (auto t = diag_[static_cast<std::size_t>(k)] + 1; t < offsets_[k + 1]; ++t) {
                    const auto p = pos[static_cast<std::size_t>(cols_[static_cast<std::size_t>(t)])];
                    if (p >= 0) {
                        lu_[static_cast<std::size_t>(p)] -= factor * lu_[static_cast<std::size_t>(t)];
                    }
                }
            }
            for (auto q = offsets_[r]; q < offsets_[r + 1]; ++q) {
                pos[static_cast<std::size_t>(cols_[static_cast<std::size_t>(q)])] = -1;
            }
            if (lu_[static_cast<std::size_t>(diag_[static_cast<std::size_t>(r)])] == 0.0) {
                throw SolverError("ilu0: zero pivot", std::numeric_limits<double>::infinity());
            }
        }
    }

    /// z = (LU)^{-1} v
    void apply(std::span<const double> v, std::span<double> z) const {
        const auto n = static_cast<std::int32_t>(diag_.size());
        for (std::int32_t r = 0; r < n; ++r) {
            double s = v[static_cast<std::size_t>(r)];
            for (auto q = offsets_[r]; q < diag_[static_cast<std::size_t>(r)]; ++q) {
                s -= lu_[static_cast<std::size_t>(q)] * z[static_cast<std::size_t>(cols_[static_cast<std::size_t>(q)])];
            }
            z[static_cast<std::size_t>(r)] = s;
        }
        for (std::int32_t r = n - 1; r >= 0; --r) {
            double s = z[static_cast<std::size_t>(r)];
            const auto d = diag_[static_cast<std::size_t>(r)];
            for (auto q = d + 1; q < offsets_[r + 1]; ++q) {
                s -= lu_[static_cast<std::size_t>(q)] * z[static_cast<std::size_t>(cols_[static_cast<std::size_t>(q)])];
            }
            z[static_cast<std::size_t>(r)] = s / lu_[static_cast<std::size_t>(d)];
        }
    }

private:
    std::vector<std::int32_t> offsets_;
    std::vector<std::int32_t> cols_;
    std::vector<double> lu_;
    std::vector<std::int32_t> diag_;
};

// BiCGSTAB with right ILU(0) preconditioning; the monitored residual is the
// true residual of the (possibly equilibrated) system.
SolveResult solve_bicgstab(const CsrMatrix& a_in, std::span<const double> b_in, const SolverConfig& cfg) {
    const auto n = static_cast<std::size_t>(a_in.rows());
    std::vector<double> b(b_in.begin(), b_in.end());
    CsrMatrix a = a_in;
    if (cfg.equilibrate) {
        const auto scale = equilibration_scales(a_in);
        a = a_in.row_scaled(scale);
        for (std::size_t k = 0; k < n; ++k) {
            b[k] *= scale[k];
        }
    }

    SolveResult result;
    result.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        return result;
    }
    const Ilu0 precond(a);

    std::vector<double> r = b;
    const std::vector<double> r_hat = r;
    std::vector<double> p(n, 0.0), v(n, 0.0), s(n), t(n), p_hat(n), s_hat(n);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    double rel = 1.0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const double rho_next = dot(r_hat, r);
        if (rho_next == 0.0) {
            throw SolverError("bicgstab: breakdown (rho = 0)", rel);
        }
        if (it == 1) {
            p = r;
        } else {
            const double beta = (rho_next / rho) * (alpha / omega);
            for (std::size_t k = 0; k < n; ++k) {
                p[k] = r[k] + beta * (p[k] - omega * v[k]);
            }
        }
        rho = rho_next;
        precond.apply(p, p_hat);
        v = matvec(a, p_hat);
        const double rv = dot(r_hat, v);
        if (rv == 0.0) {
            throw SolverError("bicgstab: breakdown (r_hat . v = 0)", rel);
        }
        alpha = rho / rv;
        for (std::size_t k = 0; k < n; ++k) {
            s[k] = r[k] - alpha * v[k];
        }
        if (norm2(s) / bnorm <= cfg.rel_tol) {
            for (std::size_t k = 0; k < n; ++k) {
                result.x[k] += alpha * p_hat[k];
            }
            result.iterations = it;
            fill_residual_measures(a_in, b_in, result);
            return result;
        }
        precond.apply(s, s_hat);
        t = matvec(a, s_hat);
        const double tt = dot(t, t);
        if (tt == 0.0) {
            throw SolverError("bicgstab: breakdown (t = 0)", rel);
        }
        omega = dot(t, s) / tt;
        for (std::size_t k = 0; k < n; ++k) {
            result.x[k] += alpha * p_hat[k] + omega * s_hat[k];
            r[k] = s[k] - omega * t[k];
        }
        rel = norm2(r) / bnorm;
        if (!std::isfinite(rel)) {
            throw SolverError("bicgstab: residual became non-finite", rel);
        }
        if (rel <= cfg.rel_tol) {
            result.iterations = it;
            fill_residual_measures(a_in, b_in, result);
            return result;
        }
        if (omega == 0.0) {
            throw SolverError("bicgstab: breakdown (omega = 0)", rel);
        }
    }
    std::ostringstream os;
    os << "bicgstab: no convergence in " << cfg.max_iter << " iterations (relative residual " << rel << ")";
    throw SolverError(os.str(), rel);
}

} // namespace

CsrMatrix CsrMatrix::from_triplets(std::int32_t rows, std::int32_t cols, std::vector<Triplet> triplets) {
    if (rows < 0 || cols < 0) {
        throw UsageError("csr: negative dimensions");
    }
    for (const auto& t : triplets) {
        if (t.row < 0 || t.col < 0 || t.row >= rows || t.col >= cols) {
            throw UsageError("csr: triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) + ") out of range");
        }
    }
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

    CsrMatrix out;
    out.rows_ = rows;
    out.cols_ = cols;
    out.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
    std::size_t k = 0;
    for (std::int32_t r = 0; r < rows; ++r) {
        while (k < triplets.size() && triplets[k].row == r) {
            const auto c = triplets[k].col;
            double sum = 0.0;
            while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
                sum += triplets[k].value;
                ++k;
            }
            if (sum != 0.0) {
                out.col_indices_.push_back(c);
                out.values_.push_back(sum);
            }
        }
        out.row_offsets_[static_cast<std::size_t>(r) + 1] = static_cast<std::int32_t>(out.values_.size());
    }
    return out;
}

CsrMatrix CsrMatrix::identity(std::int32_t n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (std::int32_t k = 0; k < n; ++k) {
        t.push_back({k, k, 1.0});
    }
    return from_triplets(n, n, std::move(t));
}

double CsrMatrix::coeff(std::int32_t r, std::int32_t c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
        throw UsageError("csr: index out of range");
    }
    const auto cols = row_cols(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) {
        return 0.0;
    }
    return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
}

double CsrMatrix::asymmetry() const {
    if (rows_ != cols_) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::int32_t r = 0; r < rows_; ++r) {
        const auto cols = row_cols(r);
        const auto vals = row_values(r);
        for (std::size_t q = 0; q < cols.size(); ++q) {
            worst = std::max(worst, std::abs(vals[q] - coeff(cols[q], r)));
        }
    }
    return worst;
}

double CsrMatrix::norm_inf() const {
    double worst = 0.0;
    for (std::int32_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (double v : row_values(r)) {
            s += std::abs(v);
        }
        worst = std::max(worst, s);
    }
    return worst;
}

CsrMatrix CsrMatrix::row_scaled(std::span<const double> scale) const {
    if (scale.size() != static_cast<std::size_t>(rows_)) {
        throw UsageError("csr: row scale has wrong length");
    }
    CsrMatrix out = *this;
    for (std::int32_t r = 0; r < rows_; ++r) {
        for (auto q = row_offsets_[static_cast<std::size_t>(r)]; q < row_offsets_[static_cast<std::size_t>(r) + 1]; ++q) {
            out.values_[static_cast<std::size_t>(q)] *= scale[static_cast<std::size_t>(r)];
        }
    }
    return out;
}

std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(a.cols())) {
        throw UsageError("matvec: vector length " + std::to_string(x.size()) + " does not match " +
                         std::to_string(a.cols()) + " columns");
    }
    std::vector<double> y(static_cast<std::size_t>(a.rows()), 0.0);
    for (std::int32_t r = 0; r < a.rows(); ++r) {
        const auto cols = a.row_cols(r);
        const auto vals = a.row_values(r);
        double s = 0.0;
        for (std::size_t q = 0; q < cols.size(); ++q) {
            s += vals[q] * x[static_cast<std::size_t>(cols[q])];
        }
        y[static_cast<std::size_t>(r)] = s;
    }
    return y;
}

SolverMethod parse_solver_method(const std::string& name) {
    if (name == "direct") {
        return SolverMethod::Direct;
    }
    if (name == "cg") {
        return SolverMethod::Cg;
    }
    if (name == "bicgstab") {
        return SolverMethod::Bicgstab;
    }
    throw UsageError("unknown solver '" + name + "' (expected direct, cg or bicgstab)");
}

const char* to_string(SolverMethod m) noexcept {
    switch (m) {
    case SolverMethod::Direct: return "direct";
    case SolverMethod::Cg: return "cg";
    case SolverMethod::Bicgstab: return "bicgstab";
    }
    return "unknown";
}

void SolverConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw UsageError("solver: rel_tol must lie in (0, 1)");
    }
    if (max_iter < 1) {
        throw UsageError("solver: max_iter must be >= 1");
    }
}

SolveResult factor_solve(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg, MatrixKind kind) {
    cfg.validate();
    if (a.rows() != a.cols()) {
        throw UsageError("factor_solve: matrix is not square");
    }
    if (b.size() != static_cast<std::size_t>(a.rows())) {
        throw UsageError("factor_solve: right-hand side length does not match matrix");
    }
    if (a.rows() == 0) {
        return {};
    }
    switch (cfg.method) {
    case SolverMethod::Direct: return solve_direct(a, b, cfg, kind);
    case SolverMethod::Cg: return solve_cg(a, b, cfg);
    case SolverMethod::Bicgstab: return solve_bicgstab(a, b, cfg);
    }
    throw UsageError("factor_solve: unknown method");
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nonzeros() << '\n';
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::scientific << std::setprecision(17);
    for (std::int32_t r = 0; r < a.rows(); ++r) {
        const auto cols = a.row_cols(r);
        const auto vals = a.row_values(r);
        for (std::size_t q = 0; q < cols.size(); ++q) {
            out << (r + 1) << ' ' << (cols[q] + 1) << ' ' << vals[q] << '\n';
        }
    }
    out.flags(flags);
    out.precision(precision);
}

} // namespace crossif
