#include "attnkern/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "attnkern/simd/kernels.hpp"

namespace attnkern {

namespace {

using RowMajorMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using RowMajorMutMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

RowMajorMap map_of(const Matrix& m) {
    return RowMajorMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                       static_cast<Eigen::Index>(m.cols()));
}

} // namespace

Cholesky::Cholesky(const Matrix& a) : factor_(a.rows(), a.cols()) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) throw argument_error("Cholesky: matrix must be square");
    const auto& k = kern::table();
    for (std::size_t j = 0; j < n; ++j) {
        const double pivot = a(j, j) - k.squared_norm(factor_.row(j), j);
        if (!(pivot > 0.0) || !std::isfinite(pivot))
            throw numerical_error("Cholesky: matrix not positive definite, pivot " +
                                  std::to_string(pivot) + " at index " + std::to_string(j));
        const double diag = std::sqrt(pivot);
        factor_(j, j) = diag;
        for (std::size_t i = j + 1; i < n; ++i)
            factor_(i, j) = (a(i, j) - k.dot(factor_.row(i), factor_.row(j), j)) / diag;
    }
}

void Cholesky::solve_in_place(double* x) const {
    const std::size_t n = size();
    const auto& k = kern::table();
    for (std::size_t i = 0; i < n; ++i)
        x[i] = (x[i] - k.dot(factor_.row(i), x, i)) / factor_(i, i);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = x[ri];
        for (std::size_t j = ri + 1; j < n; ++j) acc -= factor_(j, ri) * x[j];
        x[ri] = acc / factor_(ri, ri);
    }
}

double Cholesky::quadratic_form_inverse(const double* u) const {
    const std::size_t n = size();
    const auto& k = kern::table();
    Vector y(u, u + n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = (y[i] - k.dot(factor_.row(i), y.data(), i)) / factor_(i, i);
    return k.squared_norm(y.data(), n);
}

double Cholesky::trace_inverse() const {
    // Column i of L^{-1} solves L y = e_i and is zero above i.
    const std::size_t n = size();
    const auto& k = kern::table();
    Vector y(n);
    double total = 0.0;
    for (std::size_t start = 0; start < n; ++start) {
        y[start] = 1.0 / factor_(start, start);
        for (std::size_t i = start + 1; i < n; ++i)
            y[i] = -k.dot(factor_.row(i) + start, y.data() + start, i - start) / factor_(i, i);
        total += k.squared_norm(y.data() + start, n - start);
    }
    return total;
}

Matrix symmetrized(const Matrix& a) {
    if (a.rows() != a.cols()) throw argument_error("symmetrized: matrix must be square");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = 0.5 * (a(i, j) + a(j, i));
    return out;
}

Vector symmetric_eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols()) throw argument_error("symmetric_eigenvalues: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(map_of(a), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("symmetric_eigenvalues: eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    return Vector(ev.data(), ev.data() + ev.size());
}

double symmetric_operator_norm(const Matrix& a) {
    const Vector ev = symmetric_eigenvalues(a);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

Matrix symmetric_shifted_power(const Matrix& a, double shift, double p) {
    if (a.rows() != a.cols()) throw argument_error("symmetric_shifted_power: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(map_of(a));
    if (solver.info() != Eigen::Success)
        throw numerical_error("symmetric_shifted_power: eigensolver failed to converge");
    Eigen::VectorXd ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double shifted = ev[i] + shift;
        if (shifted > 0.0) {
            ev[i] = std::pow(shifted, p);
        } else if (p >= 0.0) {
            ev[i] = 0.0;
        } else {
            throw numerical_error("symmetric_shifted_power: nonpositive eigenvalue " +
                                  std::to_string(shifted) + " under negative power");
        }
    }
    Eigen::MatrixXd result = solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().transpose();
    Matrix out(a.rows(), a.cols());
    RowMajorMutMap(out.data(), result.rows(), result.cols()) = result;
    return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw argument_error("matmul: inner dimension mismatch");
    Matrix out(a.rows(), b.cols());
    RowMajorMutMap(out.data(), static_cast<Eigen::Index>(a.rows()),
                   static_cast<Eigen::Index>(b.cols())) = map_of(a) * map_of(b);
    return out;
}

} // namespace attnkern
