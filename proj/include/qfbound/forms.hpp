#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qfbound/matrix.hpp"

namespace qfb {

/// T = sum_k a_k z_k^2 + b_k z_k with z_k i.i.d. standard normal.
class DiagonalForm {
public:
    /// Throws ValidationError unless a and b are nonempty, equally long and finite.
    DiagonalForm(std::vector<double> a, std::vector<double> b);

    std::size_t dimension() const noexcept { return a_.size(); }
    std::span<const double> a() const noexcept { return a_; }
    std::span<const double> b() const noexcept { return b_; }

    /// True when every coefficient is zero, i.e. T == 0 almost surely.
    bool deterministic() const noexcept;
    /// The form of -T.
    DiagonalForm negated() const;

    friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;

private:
    std::vector<double> a_;
    std::vector<double> b_;
};

/// T = z^T A z + b^T z with z a standard Gaussian vector. A need not be symmetric.
class QuadraticForm {
public:
    /// Throws ValidationError unless A is square p x p with p >= 1, b has length p,
    /// and every entry is finite.
    QuadraticForm(Matrix matrix, std::vector<double> b);

    std::size_t dimension() const noexcept { return b_.size(); }
    const Matrix& matrix() const noexcept { return matrix_; }
    std::span<const double> b() const noexcept { return b_; }

private:
    Matrix matrix_;
    std::vector<double> b_;
};

}  // namespace qfb
