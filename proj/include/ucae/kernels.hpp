#pragma once

// Hot numeric loops, each in a serial reference version and an OpenMP version.
// The OpenMP variants parallelize over disjoint output elements and keep the
// per-element accumulation order identical to the serial code, so both produce
// bit-identical results for any thread count. ucae-bench compares throughput.

namespace ucae::kernels {

// C[m x n] = A[m x k] * B[k x n], all row-major.
void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_omp(const double* a, const double* b, double* c, int m, int k, int n);

// Y[b][o] = sum_k X[b][k] * W[o][k] + bias[o].
// X: batch x in, W: out x in (row o holds the weights of output unit o),
// wt_scratch: in*out doubles, receives W transposed.
void linear_forward_serial(const double* x, const double* w, const double* bias,
                           double* y, int batch, int in, int out, double* wt_scratch);
void linear_forward_omp(const double* x, const double* w, const double* bias,
                        double* y, int batch, int in, int out, double* wt_scratch);

// dX[b][k] = sum_o dY[b][o] * W[o][k].
void linear_backward_input_serial(const double* dy, const double* w, double* dx,
                                  int batch, int in, int out);
void linear_backward_input_omp(const double* dy, const double* w, double* dx,
                               int batch, int in, int out);

// dW[o][k] += sum_b dY[b][o] * X[b][k];  db[o] += sum_b dY[b][o].
void linear_backward_params_serial(const double* dy, const double* x, double* dw, double* db,
                                   int batch, int in, int out);
void linear_backward_params_omp(const double* dy, const double* x, double* dw, double* db,
                                int batch, int in, int out);

// D[i][j] = distance between row i of A and row j of B (Euclidean or squared).
void pairwise_distances_serial(const double* a, int na, const double* b, int nb, int dim,
                               bool squared, double* d);
void pairwise_distances_omp(const double* a, int na, const double* b, int nb, int dim,
                            bool squared, double* d);

}  // namespace ucae::kernels
