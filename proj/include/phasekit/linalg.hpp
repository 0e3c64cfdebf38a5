#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "phasekit/poly.hpp"

namespace phasekit {

/// Small dense row-major matrix; sized for the reduced Jacobians here (n <= 4).
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

inline double trace(const Matrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += m(i, i);
    return s;
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// Throws std::runtime_error on a (numerically) singular matrix.
inline std::vector<double> solve_linear(Matrix A, std::vector<double> b) {
    const int n = A.rows;
    if (A.cols != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_linear: dimension mismatch");
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(A(i, k)) > std::fabs(A(piv, k))) piv = i;
        if (std::fabs(A(piv, k)) < 1e-300) throw std::runtime_error("solve_linear: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = A(i, k) / A(k, k);
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

/// Eigenvalues of a real matrix with n <= 3, via the characteristic polynomial.
inline std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("eigenvalues: square matrix required");
    const int n = m.rows;
    if (n == 0) return {};
    if (n == 1) return {{m(0, 0), 0.0}};
    if (n == 2) {
        const double tr = m(0, 0) + m(1, 1);
        const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        return solve_quadratic(1.0, -tr, det);
    }
    if (n == 3) {
        const double tr = trace(m);
        // sum of principal 2x2 minors
        const double m12 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        const double m13 = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
        const double m23 = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        return solve_cubic(1.0, -tr, m12 + m13 + m23, -det);
    }
    throw std::invalid_argument("eigenvalues: only n <= 3 supported");
}

} // namespace phasekit
