#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qfb {

/// Dense row-major matrix of doubles. Value type; copies are deep.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    /// Takes ownership of `row_major`; throws ValidationError on size mismatch.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    Matrix transpose() const;
    double trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Largest absolute entrywise difference; matrices must agree in shape.
double max_abs_diff(const Matrix& lhs, const Matrix& rhs);

}  // namespace qfb
