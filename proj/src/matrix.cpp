#include "qfbound/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfbound/error.hpp"

namespace qfb {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows_ * cols_) {
        throw ValidationError("matrix data has " + std::to_string(data_.size()) +
                              " entries, expected " + std::to_string(rows_ * cols_));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

double Matrix::frobenius_norm() const {
    // Scaled accumulation avoids overflow for entries near sqrt(DBL_MAX).
    double scale = 0.0;
    for (double v : data_) scale = std::max(scale, std::abs(v));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (double v : data_) {
        const double r = v / scale;
        s += r * r;
    }
    return scale * std::sqrt(s);
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw ValidationError("matrix product: inner dimensions differ");
    Matrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i)
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const double l = lhs(i, k);
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += l * rhs(k, j);
        }
    return out;
}

double max_abs_diff(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw ValidationError("max_abs_diff: shape mismatch");
    double m = 0.0;
    auto l = lhs.data();
    auto r = rhs.data();
    for (std::size_t i = 0; i < l.size(); ++i) m = std::max(m, std::abs(l[i] - r[i]));
    return m;
}

}  // namespace qfb
