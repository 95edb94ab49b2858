#pragma once

#include "attnkern/matrix.hpp"

namespace attnkern {

// Lower Cholesky factor of a symmetric positive-definite matrix, plus the
// solves the toolkit needs from it. Throws numerical_error carrying the
// offending pivot when the matrix is not numerically PD.
class Cholesky {
public:
    explicit Cholesky(const Matrix& a);

    std::size_t size() const { return factor_.rows(); }
    const Matrix& factor() const { return factor_; }

    // x <- A^{-1} x
    void solve_in_place(double* x) const;

    // |L^{-1} u|^2 = u^T A^{-1} u, via one forward substitution.
    double quadratic_form_inverse(const double* u) const;

    // tr(A^{-1}) = |L^{-1}|_F^2.
    double trace_inverse() const;

private:
    Matrix factor_; // lower triangular, row-major
};

// (A + A^T) / 2.
Matrix symmetrized(const Matrix& a);

// Eigenvalues of a symmetric matrix, ascending. Backed by Eigen's
// SelfAdjointEigenSolver; used as the second algebraic route wherever the
// Cholesky path needs an independent check, and for operator norms.
Vector symmetric_eigenvalues(const Matrix& a);

// max |eigenvalue| of a symmetric matrix.
double symmetric_operator_norm(const Matrix& a);

// (A + shift I)^p for symmetric A via eigendecomposition. Eigenvalues below
// zero after shifting are clamped to zero before the power is applied.
Matrix symmetric_shifted_power(const Matrix& a, double shift, double p);

// C = A * B for row-major matrices (Eigen-backed).
Matrix matmul(const Matrix& a, const Matrix& b);

} // namespace attnkern
