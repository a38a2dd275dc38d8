#include "qfbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qfbound/error.hpp"

namespace qfb {
namespace {

double off_diagonal_mass(const Matrix& m) {
    double s = 0.0;
    for (std::size_t p = 0; p < m.rows(); ++p)
        for (std::size_t q = p + 1; q < m.cols(); ++q) s += m(p, q) * m(p, q);
    return std::sqrt(2.0 * s);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.rows();

    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const double arp = a(r, p);
        const double arq = a(r, q);
        a(r, p) = a(p, r) = c * arp - s * arq;
        a(r, q) = a(q, r) = s * arp + c * arq;
    }
    for (std::size_t r = 0; r < n; ++r) {
        const double vrp = v(r, p);
        const double vrq = v(r, q);
        v(r, p) = c * vrp - s * vrq;
        v(r, q) = s * vrp + c * vrq;
    }
}

}  // namespace

Matrix symmetrize(const Matrix& a) {
    if (!a.square()) throw ValidationError("symmetrize: matrix is not square");
    if (!a.all_finite()) throw ValidationError("symmetrize: non-finite entry");
    const std::size_t n = a.rows();
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = a(i, i);
        for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * (a(i, j) + a(j, i));
    }
    return s;
}

Matrix symmetrize(const QuadraticForm& form) { return symmetrize(form.matrix()); }

EigenDecomposition eigen_sym(const Matrix& s, const JacobiOptions& options) {
    if (!s.square() || s.rows() == 0) throw ValidationError("eigen_sym: matrix must be square and nonempty");
    if (!s.all_finite()) throw ValidationError("eigen_sym: non-finite entry");

    const std::size_t n = s.rows();
    Matrix a = symmetrize(s);
    Matrix v = Matrix::identity(n);
    const double target = options.tolerance * a.frobenius_norm();

    int sweeps = 0;
    double off = off_diagonal_mass(a);
    while (off > target) {
        if (sweeps == options.max_sweeps) {
            throw NumericalError("eigen_sym: no convergence after " + std::to_string(sweeps) +
                                     " sweeps, off-diagonal mass " + format_value(off),
                                 off);
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (a(p, q) != 0.0) rotate(a, v, p, q);
        ++sweeps;
        off = off_diagonal_mass(a);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out{std::vector<double>(n), Matrix(n, n), sweeps};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) out.basis(r, k) = v(r, order[k]);
    }
    return out;
}

SpectralReduction reduce(const QuadraticForm& form, const JacobiOptions& options) {
    auto eig = eigen_sym(symmetrize(form), options);
    const std::size_t n = form.dimension();
    std::vector<double> rotated(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r) rotated[k] += eig.basis(r, k) * form.b()[r];
    return SpectralReduction{std::move(eig.eigenvalues), std::move(eig.basis), std::move(rotated)};
}

}  // namespace qfb
