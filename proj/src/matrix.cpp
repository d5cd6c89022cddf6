#include "ucae/matrix.hpp"

#include <cmath>

#include "ucae/errors.hpp"

namespace ucae {

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw UsageError("Matrix: negative dimension");
}

Matrix::Matrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows < 0 || cols < 0) throw UsageError("Matrix: negative dimension");
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
        throw UsageError("Matrix: data length does not match rows*cols");
}

void Matrix::fill(double v) {
    for (auto& x : data_) x = v;
}

bool Matrix::all_finite() const {
    for (double x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

void Matrix::set_row(int r, const Matrix& src, int src_row) {
    if (cols_ != src.cols_) throw UsageError("Matrix::set_row: column mismatch");
    const double* s = src.row_ptr(src_row);
    double* d = row_ptr(r);
    for (int c = 0; c < cols_; ++c) d[c] = s[c];
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::row_block(int first, int count) const {
    if (first < 0 || count < 0 || first + count > rows_)
        throw UsageError("Matrix::row_block: range out of bounds");
    Matrix out(count, cols_);
    for (int r = 0; r < count; ++r) out.set_row(r, *this, first + r);
    return out;
}

Matrix Matrix::col_block(int first, int count) const {
    if (first < 0 || count < 0 || first + count > cols_)
        throw UsageError("Matrix::col_block: range out of bounds");
    Matrix out(rows_, count);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
    return out;
}

Matrix Matrix::hcat(const Matrix& right) const {
    if (right.rows_ != rows_) throw UsageError("Matrix::hcat: row mismatch");
    Matrix out(rows_, cols_ + right.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
        for (int c = 0; c < right.cols_; ++c) out(r, cols_ + c) = right(r, c);
    }
    return out;
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void require_finite(const Matrix& m, const std::string& op) {
    if (!m.all_finite()) throw NumericError(op + ": non-finite value in result");
}

std::vector<double> column_means(const Matrix& m) {
    std::vector<double> mu(m.cols(), 0.0);
    for (int r = 0; r < m.rows(); ++r) {
        const double* row = m.row_ptr(r);
        for (int c = 0; c < m.cols(); ++c) mu[c] += row[c];
    }
    for (auto& v : mu) v /= m.rows();
    return mu;
}

std::vector<double> column_variances(const Matrix& m) {
    const auto mu = column_means(m);
    std::vector<double> var(m.cols(), 0.0);
    for (int r = 0; r < m.rows(); ++r) {
        const double* row = m.row_ptr(r);
        for (int c = 0; c < m.cols(); ++c) {
            const double d = row[c] - mu[c];
            var[c] += d * d;
        }
    }
    for (auto& v : var) v /= m.rows();
    return var;
}

double trace_variance(const Matrix& m) {
    double t = 0.0;
    for (double v : column_variances(m)) t += v;
    return t;
}

double squared_distance(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double euclidean_distance(const double* a, const double* b, int n) {
    return std::sqrt(squared_distance(a, b, n));
}

}  // namespace ucae
