#include "ucae/kernels.hpp"

#include <cmath>

namespace ucae::kernels {

namespace {

// Four batch rows share each transposed-weight row load; y[o] accumulates
// over k in ascending order in every variant.
inline void forward_rows4(const double* x0, const double* x1, const double* x2, const double* x3,
                          double* y0, double* y1, double* y2, double* y3,
                          const double* wt, const double* bias, int in, int out) {
    for (int o = 0; o < out; ++o) {
        y0[o] = bias[o];
        y1[o] = bias[o];
        y2[o] = bias[o];
        y3[o] = bias[o];
    }
    for (int k = 0; k < in; ++k) {
        const double v0 = x0[k], v1 = x1[k], v2 = x2[k], v3 = x3[k];
        const double* w = wt + static_cast<std::size_t>(k) * out;
        for (int o = 0; o < out; ++o) {
            const double wv = w[o];
            y0[o] += v0 * wv;
            y1[o] += v1 * wv;
            y2[o] += v2 * wv;
            y3[o] += v3 * wv;
        }
    }
}

inline void forward_row1(const double* x, double* y, const double* wt, const double* bias,
                         int in, int out) {
    for (int o = 0; o < out; ++o) y[o] = bias[o];
    for (int k = 0; k < in; ++k) {
        const double v = x[k];
        const double* w = wt + static_cast<std::size_t>(k) * out;
        for (int o = 0; o < out; ++o) y[o] += v * w[o];
    }
}

inline void transpose(const double* w, double* wt, int out, int in) {
    for (int o = 0; o < out; ++o)
        for (int k = 0; k < in; ++k) wt[static_cast<std::size_t>(k) * out + o] = w[static_cast<std::size_t>(o) * in + k];
}

inline void backward_input_row(const double* dy, const double* w, double* dx, int in, int out) {
    for (int k = 0; k < in; ++k) dx[k] = 0.0;
    for (int o = 0; o < out; ++o) {
        const double g = dy[o];
        const double* wr = w + static_cast<std::size_t>(o) * in;
        for (int k = 0; k < in; ++k) dx[k] += g * wr[k];
    }
}

inline void backward_params_unit(const double* dy, const double* x, double* dwr, double* db,
                                 int o, int batch, int in, int out) {
    double acc = 0.0;
    for (int b = 0; b < batch; ++b) {
        const double g = dy[static_cast<std::size_t>(b) * out + o];
        const double* xr = x + static_cast<std::size_t>(b) * in;
        for (int k = 0; k < in; ++k) dwr[k] += g * xr[k];
        acc += g;
    }
    *db += acc;
}

inline double row_distance(const double* a, const double* b, int dim, bool squared) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return squared ? s : std::sqrt(s);
}

}  // namespace

void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        double* cr = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) cr[j] = 0.0;
        const double* ar = a + static_cast<std::size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double av = ar[p];
            const double* br = b + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) cr[j] += av * br[j];
        }
    }
}

void matmul_omp(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static) if (static_cast<long>(m) * k * n > 65536)
    for (int i = 0; i < m; ++i) {
        double* cr = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) cr[j] = 0.0;
        const double* ar = a + static_cast<std::size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double av = ar[p];
            const double* br = b + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) cr[j] += av * br[j];
        }
    }
}

void linear_forward_serial(const double* x, const double* w, const double* bias,
                           double* y, int batch, int in, int out, double* wt_scratch) {
    transpose(w, wt_scratch, out, in);
    int b = 0;
    for (; b + 4 <= batch; b += 4) {
        const double* x0 = x + static_cast<std::size_t>(b) * in;
        double* y0 = y + static_cast<std::size_t>(b) * out;
        forward_rows4(x0, x0 + in, x0 + 2 * in, x0 + 3 * in,
                      y0, y0 + out, y0 + 2 * out, y0 + 3 * out, wt_scratch, bias, in, out);
    }
    for (; b < batch; ++b)
        forward_row1(x + static_cast<std::size_t>(b) * in, y + static_cast<std::size_t>(b) * out,
                     wt_scratch, bias, in, out);
}

void linear_forward_omp(const double* x, const double* w, const double* bias,
                        double* y, int batch, int in, int out, double* wt_scratch) {
    transpose(w, wt_scratch, out, in);
    const int blocks = batch / 4;
#pragma omp parallel for schedule(static) if (static_cast<long>(batch) * in * out > 65536)
    for (int blk = 0; blk < blocks; ++blk) {
        const int b = blk * 4;
        const double* x0 = x + static_cast<std::size_t>(b) * in;
        double* y0 = y + static_cast<std::size_t>(b) * out;
        forward_rows4(x0, x0 + in, x0 + 2 * in, x0 + 3 * in,
                      y0, y0 + out, y0 + 2 * out, y0 + 3 * out, wt_scratch, bias, in, out);
    }
    for (int b = blocks * 4; b < batch; ++b)
        forward_row1(x + static_cast<std::size_t>(b) * in, y + static_cast<std::size_t>(b) * out,
                     wt_scratch, bias, in, out);
}

void linear_backward_input_serial(const double* dy, const double* w, double* dx,
                                  int batch, int in, int out) {
    for (int b = 0; b < batch; ++b)
        backward_input_row(dy + static_cast<std::size_t>(b) * out, w,
                           dx + static_cast<std::size_t>(b) * in, in, out);
}

void linear_backward_input_omp(const double* dy, const double* w, double* dx,
                               int batch, int in, int out) {
#pragma omp parallel for schedule(static) if (static_cast<long>(batch) * in * out > 65536)
    for (int b = 0; b < batch; ++b)
        backward_input_row(dy + static_cast<std::size_t>(b) * out, w,
                           dx + static_cast<std::size_t>(b) * in, in, out);
}

void linear_backward_params_serial(const double* dy, const double* x, double* dw, double* db,
                                   int batch, int in, int out) {
    for (int o = 0; o < out; ++o)
        backward_params_unit(dy, x, dw + static_cast<std::size_t>(o) * in, db + o, o, batch, in, out);
}

void linear_backward_params_omp(const double* dy, const double* x, double* dw, double* db,
                                int batch, int in, int out) {
#pragma omp parallel for schedule(static) if (static_cast<long>(batch) * in * out > 65536)
    for (int o = 0; o < out; ++o)
        backward_params_unit(dy, x, dw + static_cast<std::size_t>(o) * in, db + o, o, batch, in, out);
}

void pairwise_distances_serial(const double* a, int na, const double* b, int nb, int dim,
                               bool squared, double* d) {
    for (int i = 0; i < na; ++i) {
        const double* ar = a + static_cast<std::size_t>(i) * dim;
        double* dr = d + static_cast<std::size_t>(i) * nb;
        for (int j = 0; j < nb; ++j)
            dr[j] = row_distance(ar, b + static_cast<std::size_t>(j) * dim, dim, squared);
    }
}

void pairwise_distances_omp(const double* a, int na, const double* b, int nb, int dim,
                            bool squared, double* d) {
#pragma omp parallel for schedule(static) if (static_cast<long>(na) * nb * dim > 65536)
    for (int i = 0; i < na; ++i) {
        const double* ar = a + static_cast<std::size_t>(i) * dim;
        double* dr = d + static_cast<std::size_t>(i) * nb;
        for (int j = 0; j < nb; ++j)
            dr[j] = row_distance(ar, b + static_cast<std::size_t>(j) * dim, dim, squared);
    }
}

}  // namespace ucae::kernels
