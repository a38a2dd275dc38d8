#pragma once

#include <cstddef>
#include <vector>

#include "qfbound/forms.hpp"
#include "qfbound/matrix.hpp"

namespace qfb {

/// Stopping rule of the cyclic Jacobi eigensolver.
struct JacobiOptions {
    /// Converged once the off-diagonal Frobenius mass is <= tolerance * ||S||_F.
    double tolerance = 1e-14;
    int max_sweeps = 100;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    Matrix basis;                     // column k is the eigenvector of eigenvalues[k]
    int sweeps = 0;
};

/// Result of rewriting z^T A z + b^T z as sum_k s_k z'_k^2 + b'_k z'_k with z' = U^T z.
struct SpectralReduction {
    std::vector<double> eigenvalues;  // s, descending
    Matrix basis;                     // U, orthonormal
    std::vector<double> rotated_b;    // b' = U^T b

    /// The distribution-equivalent diagonal form (s, b').
    DiagonalForm diagonal_form() const { return DiagonalForm(eigenvalues, rotated_b); }
};

/// (A + A^T) / 2, symmetric bit-for-bit.
Matrix symmetrize(const QuadraticForm& form);
Matrix symmetrize(const Matrix& a);

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Only the symmetric part of `s` is used; callers are expected to pass
/// `symmetrize(...)` output. Eigenvalues come back in descending order with
/// ties kept in the order the rotations left them (stable sort). Throws
/// ValidationError for non-square or non-finite input and NumericalError,
/// carrying the remaining off-diagonal mass, when the sweep budget runs out.
EigenDecomposition eigen_sym(const Matrix& s, const JacobiOptions& options = {});

/// symmetrize + eigen_sym + b' = U^T b.
SpectralReduction reduce(const QuadraticForm& form, const JacobiOptions& options = {});

}  // namespace qfb
