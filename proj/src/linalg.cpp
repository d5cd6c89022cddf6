#include "ucae/linalg.hpp"

#include <cmath>

#include "ucae/errors.hpp"
#include "ucae/kernels.hpp"

namespace ucae {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw UsageError("matmul: inner dimensions do not match");
    Matrix c(a.rows(), b.cols());
    kernels::matmul_omp(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    require_finite(c, "matmul");
    return c;
}

Matrix gauss_sample(Rng& rng, int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw UsageError("gauss_sample: dimensions must be positive");
    Matrix m(rows, cols);
    double* p = m.data();
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) p[i] = rng.gaussian();
    return m;
}

SpectralNorm spectral_norm(const Matrix& a, int iters, double tol) {
    if (a.rows() == 0 || a.cols() == 0) throw UsageError("spectral_norm: empty matrix");
    if (iters < 1) throw UsageError("spectral_norm: iters must be >= 1");

    const int n = a.cols();
    // Deterministic start vector; the ramp breaks symmetry against
    // structured matrices whose top singular vector is orthogonal to ones.
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * i;
    double nv = norm2(v);
    for (auto& x : v) x /= nv;

    std::vector<double> av(a.rows()), w(n);
    SpectralNorm result;
    double sigma_prev = 0.0;
    for (int it = 0; it < iters; ++it) {
        // w = a^T (a v)
        for (int r = 0; r < a.rows(); ++r) {
            const double* row = a.row_ptr(r);
            double s = 0.0;
            for (int c = 0; c < n; ++c) s += row[c] * v[c];
            av[r] = s;
        }
        for (int c = 0; c < n; ++c) w[c] = 0.0;
        for (int r = 0; r < a.rows(); ++r) {
            const double* row = a.row_ptr(r);
            const double s = av[r];
            for (int c = 0; c < n; ++c) w[c] += s * row[c];
        }
        const double sigma = norm2(av);
        result.value = sigma;
        result.iterations = it + 1;
        if (it > 0 && std::abs(sigma - sigma_prev) <= tol * std::max(sigma, 1e-300)) {
            result.converged = true;
            break;
        }
        sigma_prev = sigma;
        const double nw = norm2(w);
        if (nw == 0.0) {  // a v landed in the null space; norm is the current estimate
            result.converged = true;
            break;
        }
        for (int c = 0; c < n; ++c) v[c] = w[c] / nw;
    }
    if (!std::isfinite(result.value)) throw NumericError("spectral_norm: non-finite estimate");
    return result;
}

void orthonormalize_columns(Matrix& a) {
    const int rows = a.rows(), cols = a.cols();
    if (rows < cols) throw UsageError("orthonormalize_columns: requires rows >= cols");
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < cols; ++j) {
            for (int i = 0; i < j; ++i) {
                double proj = 0.0;
                for (int r = 0; r < rows; ++r) proj += a(r, i) * a(r, j);
                for (int r = 0; r < rows; ++r) a(r, j) -= proj * a(r, i);
            }
            double nrm = 0.0;
            for (int r = 0; r < rows; ++r) nrm += a(r, j) * a(r, j);
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12) throw NumericError("orthonormalize_columns: rank deficient input");
            for (int r = 0; r < rows; ++r) a(r, j) /= nrm;
        }
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

}  // namespace ucae
