#include "crossif/oracle.hpp"

#include "crossif/error.hpp"

#include <cmath>
#include <numbers>

namespace crossif::oracle {

namespace {

// 1D hat centred at node k of a grid with spacing h, and its derivative,
// written directly from the piecewise definition.
long double hat(int k, long double h, long double x) {
    const long double left = (k - 1) * h;
    const long double mid = k * h;
    const long double right = (k + 1) * h;
    if (x >= left && x <= mid) {
        return (x - left) / (mid - left);
    }
    if (x >= mid && x <= right) {
        return (right - x) / (right - mid);
    }
    return 0.0L;
}

long double hat_slope(int k, long double h, long double x) {
    const long double left = (k - 1) * h;
    const long double mid = k * h;
    const long double right = (k + 1) * h;
    if (x > left && x < mid) {
        return 1.0L / (mid - left);
    }
    if (x > mid && x < right) {
        return -1.0L / (right - mid);
    }
    return 0.0L;
}

} // namespace

QuadratureRule gauss_legendre(int order) {
    if (order < 1) {
        throw UsageError("gauss_legendre: order must be >= 1");
    }
    QuadratureRule rule;
    for (int k = 0; k < order; ++k) {
        // Newton iteration on P_order from the Chebyshev-like initial guess,
        // carried out in extended precision.
        long double t = std::cos(std::numbers::pi_v<long double> * (k + 0.75L) / (order + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L;
            long double p1 = t;
            for (int l = 2; l <= order; ++l) {
                const long double p2 = ((2.0L * l - 1.0L) * t * p1 - (l - 1.0L) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (t * p1 - p0) / (t * t - 1.0L);
            const long double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-19L) {
                break;
            }
        }
        rule.points.push_back(static_cast<double>(0.5L * (1.0L - t)));
        rule.weights.push_back(static_cast<double>(1.0L / ((1.0L - t * t) * dp * dp)));
    }
    return rule;
}

DenseSystem dense_assembly(const Problem& problem, int quad_order) {
    problem.validate();
    const int n = problem.grid.intervals();
    if (n > 32) {
        throw UsageError("dense_assembly: N=" + std::to_string(n) + " too large (max 32)");
    }
    if (quad_order < 3) {
        throw UsageError("dense_assembly: quadrature order must be >= 3");
    }
    const long double h = 1.0L / n;
    const auto rule = gauss_legendre(quad_order);
    const std::size_t size = static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n - 1);
    // Accumulate in extended precision and round once at the end.
    std::vector<long double> mat(size * size, 0.0L);
    std::vector<long double> rhs(size, 0.0L);

    auto index = [n](int i, int j) { return static_cast<std::size_t>((j - 1) * (n - 1) + (i - 1)); };
    auto interior = [n](int i, int j) { return i >= 1 && i <= n - 1 && j >= 1 && j <= n - 1; };

    for (int ey = 0; ey < n; ++ey) {
        for (int ex = 0; ex < n; ++ex) {
            for (std::size_t qx = 0; qx < rule.points.size(); ++qx) {
                for (std::size_t qy = 0; qy < rule.points.size(); ++qy) {
                    const long double x = (ex + static_cast<long double>(rule.points[qx])) * h;
                    const long double y = (ey + static_cast<long double>(rule.points[qy])) * h;
                    const long double w =
                        static_cast<long double>(rule.weights[qx]) * rule.weights[qy] * h * h;
                    const long double a = problem.coeff.sample(static_cast<double>(x), static_cast<double>(y));
                    const long double fv = problem.f(static_cast<double>(x), static_cast<double>(y));
                    for (int pj = ey; pj <= ey + 1; ++pj) {
                        for (int pi = ex; pi <= ex + 1; ++pi) {
                            if (!interior(pi, pj)) {
                                continue;
                            }
                            const long double phi_p = hat(pi, h, x) * hat(pj, h, y);
                            const long double gpx = hat_slope(pi, h, x) * hat(pj, h, y);
                            const long double gpy = hat(pi, h, x) * hat_slope(pj, h, y);
                            rhs[index(pi, pj)] += w * fv * phi_p;
                            for (int qj = ey; qj <= ey + 1; ++qj) {
                                for (int qi = ex; qi <= ex + 1; ++qi) {
                                    if (!interior(qi, qj)) {
                                        continue;
                                    }
                                    const long double gqx = hat_slope(qi, h, x) * hat(qj, h, y);
                                    const long double gqy = hat(qi, h, x) * hat_slope(qj, h, y);
                                    mat[index(pi, pj) * size + index(qi, qj)] += w * a * (gpx * gqx + gpy * gqy);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    DenseSystem out{DenseMatrix(size), std::vector<double>(size, 0.0)};
    for (std::size_t k = 0; k < mat.size(); ++k) {
        out.matrix.data[k] = static_cast<double>(mat[k]);
    }
    for (std::size_t k = 0; k < size; ++k) {
        out.rhs[k] = static_cast<double>(rhs[k]);
    }
    return out;
}

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.n;
    if (b.size() != n) {
        throw UsageError("dense_solve: size mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > std::abs(a(pivot, k))) {
                pivot = r;
            }
        }
        if (a(pivot, k) == 0.0) {
            throw SolverError("dense_solve: singular matrix", 0.0);
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(k, c), a(pivot, c));
            }
            std::swap(b[k], b[pivot]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = a(r, k) / a(k, k);
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = k; c < n; ++c) {
                a(r, c) -= factor * a(k, c);
            }
            b[r] -= factor * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) {
            s -= a(k, c) * x[c];
        }
        x[k] = s / a(k, k);
    }
    return x;
}

void FourierConfig::validate() const {
    if (modes < 3 || modes % 2 == 0) {
        throw UsageError("fourier: mode cutoff must be odd and >= 3, got " + std::to_string(modes));
    }
}

double fourier_poisson(double x, double y, const FourierConfig& cfg) {
    cfg.validate();
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
        throw UsageError("fourier_poisson: point outside the unit square");
    }
    constexpr double pi = std::numbers::pi;
    const double scale = 16.0 / (pi * pi * pi * pi);
    double sum = 0.0;
    for (int p = 1; p <= cfg.modes; p += 2) {
        const double sx = std::sin(p * pi * x);
        double inner = 0.0;
        for (int q = 1; q <= cfg.modes; q += 2) {
            inner += std::sin(q * pi * y) / (static_cast<double>(q) * (static_cast<double>(p) * p + static_cast<double>(q) * q));
        }
        sum += sx * inner / p;
    }
    return scale * sum;
}

ScalarField fourier_poisson_grid(int intervals, const FourierConfig& cfg) {
    cfg.validate();
    if (intervals < 1) {
        throw UsageError("fourier_poisson_grid: need at least one interval");
    }
    constexpr double pi = std::numbers::pi;
    const int n = intervals;
    const auto count = static_cast<std::size_t>((cfg.modes + 1) / 2);
    const auto nodes = static_cast<std::size_t>(n + 1);

    // sin(p pi k / N) with the argument reduced modulo 2N in integers.
    std::vector<double> sines(count * nodes);
    for (std::size_t a = 0; a < count; ++a) {
        const long long p = 2 * static_cast<long long>(a) + 1;
        for (std::size_t k = 0; k < nodes; ++k) {
            const long long r = (p * static_cast<long long>(k)) % (2LL * n);
            sines[a * nodes + k] = std::sin(pi * static_cast<double>(r) / n);
        }
    }

    // inner[p][j] = sum_q sin(q pi y_j) / (p q (p^2 + q^2))
    std::vector<double> inner(count * nodes, 0.0);
    for (std::size_t a = 0; a < count; ++a) {
        const double p = 2.0 * static_cast<double>(a) + 1.0;
        for (std::size_t b = 0; b < count; ++b) {
            const double q = 2.0 * static_cast<double>(b) + 1.0;
            const double c = 1.0 / (p * q * (p * p + q * q));
            const double* sq = &sines[b * nodes];
            double* row = &inner[a * nodes];
            for (std::size_t k = 0; k < nodes; ++k) {
                row[k] += c * sq[k];
            }
        }
    }

    ScalarField out(n, 0);
    const double scale = 16.0 / (pi * pi * pi * pi);
    for (std::size_t j = 0; j < nodes; ++j) {
        for (std::size_t i = 0; i < nodes; ++i) {
            double s = 0.0;
            for (std::size_t a = 0; a < count; ++a) {
                s += sines[a * nodes + i] * inner[a * nodes + j];
            }
            out.set(static_cast<int>(i), static_cast<int>(j), scale * s);
        }
    }
    return out;
}

} // namespace crossif::oracle
