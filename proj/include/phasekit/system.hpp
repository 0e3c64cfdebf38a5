#pragma once

#include <stdexcept>
#include <vector>

#include "phasekit/angles.hpp"
#include "phasekit/coupling.hpp"
#include "phasekit/linalg.hpp"

namespace phasekit {

/// Absolute phases on T^N.
using PhaseState = std::vector<double>;
/// Phase differences psi_k = theta_{k+1} - theta_1 on T^{N-1}.
using ReducedState = std::vector<double>;

/// N identical oscillators with natural frequency omega and coupling g:
/// d theta_k / dt = omega + (1/N) sum_j g(theta_k - theta_j).
struct SystemParams {
    int n = 2;
    double omega = 0.0;
    HarmonicCoupling g;

    SystemParams(int n_, double omega_, HarmonicCoupling g_) : n(n_), omega(omega_), g(std::move(g_)) {
        if (n < 2) throw std::invalid_argument("SystemParams: need at least two oscillators");
    }
};

/// Lift phase differences to the representative with theta_1 = 0.
inline PhaseState lift(const ReducedState& psi) {
    PhaseState th(psi.size() + 1, 0.0);
    for (std::size_t k = 0; k < psi.size(); ++k) th[k + 1] = psi[k];
    return th;
}

/// Right-hand side F_k(theta) = omega + (1/N) sum_j g(theta_k - theta_j).
/// The j = k self term contributes g(0), as written.
inline std::vector<double> vector_field(const SystemParams& p, const PhaseState& th) {
    const int n = p.n;
    if (static_cast<int>(th.size()) != n) throw std::invalid_argument("vector_field: state dimension mismatch");
    std::vector<double> f(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += p.g.eval(th[k] - th[j]);
        f[k] = p.omega + s / n;
    }
    return f;
}

/// Phase-difference field: component k is F_{k+1} - F_1 for any lift of psi.
/// Independent of omega and of the chosen lift.
inline std::vector<double> reduced_field(const SystemParams& p, const ReducedState& psi) {
    if (static_cast<int>(psi.size()) != p.n - 1)
        throw std::invalid_argument("reduced_field: state dimension mismatch");
    const std::vector<double> f = vector_field(p, lift(psi));
    std::vector<double> out(psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) out[k] = f[k + 1] - f[0];
    return out;
}

/// Analytic Jacobian of the full field: off-diagonal (i,j) = -(1/N) g'(theta_i - theta_j),
/// diagonal (i,i) = (1/N) sum_{j != i} g'(theta_i - theta_j). Every row sums to zero.
inline Matrix jacobian(const SystemParams& p, const PhaseState& th) {
    const int n = p.n;
    if (static_cast<int>(th.size()) != n) throw std::invalid_argument("jacobian: state dimension mismatch");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = p.g.eval(th[i] - th[j], 1);
            m(i, j) = -d / n;
            diag += d;
        }
        m(i, i) = diag / n;
    }
    return m;
}

/// Jacobian of reduced_field at psi, obtained from the full Jacobian at the
/// lift: J~[k][m] = J[k+1][m+1] - J[0][m+1].
inline Matrix reduced_jacobian(const SystemParams& p, const ReducedState& psi) {
    const Matrix full = jacobian(p, lift(psi));
    const int d = p.n - 1;
    Matrix m(d, d);
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) m(k, j) = full(k + 1, j + 1) - full(0, j + 1);
    return m;
}

/// Divergence of the flow, (1/N) sum_k sum_{j != k} g'(theta_k - theta_j).
/// Vanishes identically for even g (g' odd).
inline double divergence(const SystemParams& p, const PhaseState& th) {
    const int n = p.n;
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            s += p.g.eval(th[k] - th[j], 1);
        }
    return s / n;
}

/// Potential V(theta) = -(1/2N) sum_{k,j} G(theta_k - theta_j) for odd g,
/// with G the single-valued primitive of g. Then F_k = omega - dV/dtheta_k.
inline double potential(const SystemParams& p, const PhaseState& th) {
    if (!p.g.is_odd())
        throw std::invalid_argument("potential: coupling must be odd (gradient structure only holds for odd g)");
    const HarmonicCoupling G = antiderivative(p.g).G;
    const int n = p.n;
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) s += G.eval(th[k] - th[j]);
    return -s / (2.0 * n);
}

} // namespace phasekit
