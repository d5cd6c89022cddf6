#pragma once

#include "ucae/matrix.hpp"
#include "ucae/rng.hpp"

namespace ucae {

// Standard matrix product; dimensions must chain, result validated finite.
Matrix matmul(const Matrix& a, const Matrix& b);

// rows x cols matrix of i.i.d. standard normals drawn row-major from `rng`.
Matrix gauss_sample(Rng& rng, int rows, int cols);

struct SpectralNorm {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Largest singular value by power iteration on a^T a. `converged` is false
// when the relative change never dropped below `tol` within `iters`; the best
// estimate is still returned.
SpectralNorm spectral_norm(const Matrix& a, int iters = 1000, double tol = 1e-13);

// In-place modified Gram-Schmidt (run twice) on the columns of `a`.
// Requires rows >= cols and full column rank.
void orthonormalize_columns(Matrix& a);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

}  // namespace ucae
