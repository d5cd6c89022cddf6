#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ucae {

// Dense row-major matrix of doubles. The universal numeric carrier:
// sample batches are rows, vectors are 1 x n or n x 1 as convenient.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    Matrix(int rows, int cols, std::vector<double> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    double* row_ptr(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
    const double* row_ptr(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    const std::vector<double>& values() const { return data_; }

    void fill(double v);
    bool all_finite() const;
    bool same_shape(const Matrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

    // Copies row r of `src` into row r of *this; column counts must match.
    void set_row(int r, const Matrix& src, int src_row);

    Matrix transposed() const;

    // Rows `first` .. `first + count - 1` as a new matrix.
    Matrix row_block(int first, int count) const;
    // Columns `first` .. `first + count - 1` as a new matrix.
    Matrix col_block(int first, int count) const;
    // Horizontal concatenation [*this | right].
    Matrix hcat(const Matrix& right) const;

    static Matrix identity(int n);

    bool operator==(const Matrix& other) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// Throws ucae::NumericError naming `op` if any entry is NaN or Inf.
void require_finite(const Matrix& m, const std::string& op);

// Column-wise mean and variance (population) of the rows of `m`.
std::vector<double> column_means(const Matrix& m);
std::vector<double> column_variances(const Matrix& m);

// Sum of per-column variances; the "trace variance" used as a scale reference.
double trace_variance(const Matrix& m);

double squared_distance(const double* a, const double* b, int n);
double euclidean_distance(const double* a, const double* b, int n);

}  // namespace ucae
