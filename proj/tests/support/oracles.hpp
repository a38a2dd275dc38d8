#pragma once

// Test-only reference computations. Nothing here calls into the closed forms
// under test.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qfbound/forms.hpp"
#include "qfbound/matrix.hpp"

namespace qfb::test {

/// E exp(y (a z^2 + b z)) by adaptive Gauss-Kronrod against the standard normal
/// density. The integrand is Gaussian in z with precision 1 - 2ay; the window
/// spans 12 of its standard deviations either side of its peak.
inline double mgf_by_quadrature(double a, double b, double y) {
    const double precision = 1.0 - 2.0 * a * y;
    const double sd = 1.0 / std::sqrt(precision);
    const double peak = y * b / precision;
    auto f = [&](double z) {
        return std::exp(y * (a * z * z + b * z) - 0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, peak - 12.0 * sd, peak + 12.0 * sd, 15,
                                                                         1e-14, &err);
}

inline std::vector<double> uniform_vector(std::mt19937_64& g, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(g);
    return v;
}

inline DiagonalForm random_form(std::mt19937_64& g, std::size_t p, double lo = -3.0, double hi = 3.0) {
    return DiagonalForm(uniform_vector(g, p, lo, hi), uniform_vector(g, p, lo, hi));
}

inline Matrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
    return Matrix(rows, cols, uniform_vector(g, rows * cols, lo, hi));
}

/// Haar-ish orthonormal matrix: modified Gram-Schmidt on Gaussian columns.
inline Matrix random_orthonormal(std::mt19937_64& g, std::size_t n) {
    std::normal_distribution<double> nd;
    Matrix q(n, n);
    for (auto& v : q.data()) v = nd(g);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t r = 0; r < n; ++r) dot += q(r, k) * q(r, j);
            for (std::size_t r = 0; r < n; ++r) q(r, k) -= dot * q(r, j);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += q(r, k) * q(r, k);
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) q(r, k) /= norm;
    }
    return q;
}

inline Matrix gram_deviation(const Matrix& u) { return u.transpose() * u; }

}  // namespace qfb::test
