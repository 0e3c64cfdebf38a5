#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasekit/angles.hpp"
#include "phasekit/system.hpp"

namespace phasekit {

/// A representative in the closure of the canonical invariant region
/// 0 = theta_1 <= theta_2 <= ... <= theta_N <= 2*pi.
struct CirPoint {
    PhaseState theta;             ///< ordered phases, theta[0] == 0
    std::vector<int> permutation; ///< permutation[i] = input index placed at slot i
    bool boundary = false;        ///< some inequality is non-strict
};

namespace detail {

inline bool cir_boundary(const PhaseState& th, double tol = 0.0) {
    for (std::size_t k = 0; k + 1 < th.size(); ++k)
        if (th[k + 1] - th[k] <= tol) return true;
    return th.back() >= two_pi - tol;
}

} // namespace detail

/// Sort the (wrapped) phases and shift so the smallest becomes zero.
/// Idempotent; the applied reordering is recorded.
inline CirPoint canonical_representative(const PhaseState& theta) {
    const std::size_t n = theta.size();
    if (n == 0) throw std::invalid_argument("canonical_representative: empty state");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    PhaseState w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = wrap_2pi(theta[k]);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return w[a] < w[b]; });
    CirPoint out;
    out.theta.resize(n);
    out.permutation = perm;
    const double base = w[perm[0]];
    for (std::size_t k = 0; k < n; ++k) out.theta[k] = w[perm[k]] - base;
    out.theta[0] = 0.0;
    out.boundary = detail::cir_boundary(out.theta);
    return out;
}

/// Residual Z_N symmetry of the region:
/// tau(0, t2, ..., tN) = (0, t3 - t2, ..., tN - t2, 2*pi - t2).
inline CirPoint tau(const CirPoint& p) {
    const std::size_t n = p.theta.size();
    CirPoint out;
    out.theta.resize(n);
    out.permutation.resize(n);
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    out.theta[0] = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) out.theta[k] = p.theta[k + 1] - p.theta[1];
    if (n > 1) out.theta[n - 1] = two_pi - p.theta[1];
    out.boundary = detail::cir_boundary(out.theta);
    return out;
}

inline CirPoint tau_pow(CirPoint p, int k) {
    const int n = static_cast<int>(p.theta.size());
    k = ((k % n) + n) % n;
    for (int i = 0; i < k; ++i) p = tau(p);
    return p;
}

/// Reversing symmetry preserving the region:
/// rev_hat(0, t2, ..., tN) = (0, 2*pi - tN, ..., 2*pi - t2). An involution.
inline CirPoint rev_hat(const CirPoint& p) {
    const std::size_t n = p.theta.size();
    CirPoint out;
    out.theta.resize(n);
    out.permutation.resize(n);
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    out.theta[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) out.theta[k] = two_pi - p.theta[n - k];
    out.boundary = detail::cir_boundary(out.theta);
    return out;
}

/// Cluster partition plus spatiotemporal block tag of a configuration.
struct IsotropyLabel {
    std::vector<int> cluster_sizes; ///< descending, sums to N
    int zm_block = 1;               ///< M > 1 when the configuration maps to itself under rotation by 2*pi/M
    std::string description;        ///< e.g. "S4", "S2xS2", "Z2", "trivial"
    bool chain_ambiguous = false;   ///< a chain of pairwise-close phases spans more than tol
};

/// Cluster phases by circular distance <= tol and detect Z_M structure
/// (equality of the phase multiset with its rotation by 2*pi/M). A chain of
/// pairwise-close phases whose total span exceeds tol is flagged, not merged
/// silently into separate clusters.
inline IsotropyLabel isotropy(const PhaseState& theta, double tol = 1e-8) {
    if (tol < 0.0) throw std::invalid_argument("isotropy: tol must be >= 0");
    const int n = static_cast<int>(theta.size());
    IsotropyLabel lab;
    if (n == 0) return lab;

    PhaseState w(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) w[k] = wrap_2pi(theta[k]);
    std::sort(w.begin(), w.end());

    // split the circle at gaps > tol
    std::vector<double> gap(n);
    for (int k = 0; k < n; ++k) {
        const double next = (k + 1 < n) ? w[k + 1] : w[0] + two_pi;
        gap[k] = next - w[k];
    }
    int start = 0; // begin clusters after the largest gap
    for (int k = 1; k < n; ++k)
        if (gap[k] > gap[start]) start = k;
    std::vector<int> sizes;
    int cur = 1;
    double span = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k = (start + 1 + i) % n;
        if (i == n - 1 || gap[k] > tol) {
            if (span > tol && cur > 1) lab.chain_ambiguous = true;
            sizes.push_back(cur);
            cur = 1;
            span = 0.0;
        } else {
            ++cur;
            span += gap[k];
        }
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    lab.cluster_sizes = sizes;

    // spatiotemporal blocks: largest M | N with {w} == {w + 2*pi/M} as multisets
    for (int m = n; m >= 2; --m) {
        if (n % m != 0) continue;
        PhaseState rot(w.size());
        for (std::size_t k = 0; k < w.size(); ++k) rot[k] = wrap_2pi(w[k] + two_pi / m);
        std::sort(rot.begin(), rot.end());
        bool match = false;
        for (int s = 0; s < n && !match; ++s) {
            double worst = 0.0;
            for (int k = 0; k < n; ++k) worst = std::max(worst, circ_dist(w[k], rot[(k + s) % n]));
            match = worst <= std::max(tol, 1e-12);
        }
        if (match) {
            lab.zm_block = m;
            break;
        }
    }

    auto cluster_word = [](const std::vector<int>& cs) {
        std::string word;
        for (int s : cs)
            if (s > 1) word += (word.empty() ? "" : "x") + std::string("S") + std::to_string(s);
        return word;
    };
    if (lab.zm_block > 1) {
        // per-block composition: each cluster size occurs in M identical blocks
        std::vector<int> per_block;
        bool divisible = true;
        for (std::size_t i = 0; i < sizes.size();) {
            std::size_t j = i;
            while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
            const int count = static_cast<int>(j - i);
            if (count % lab.zm_block != 0) divisible = false;
            for (int k = 0; k < count / std::max(1, lab.zm_block); ++k) per_block.push_back(sizes[i]);
            i = j;
        }
        const std::string inner = cluster_word(divisible ? per_block : sizes);
        lab.description = inner.empty() ? "Z" + std::to_string(lab.zm_block)
                                        : "(" + inner + ")^" + std::to_string(lab.zm_block) + "xsZ" +
                                              std::to_string(lab.zm_block);
    } else {
        const std::string base = cluster_word(sizes);
        lab.description = base.empty() ? "trivial" : base;
    }
    return lab;
}

struct QMembership {
    bool member = false;
    double residual = 0.0; ///< max componentwise circular distance to the reflected image
};

/// Test theta in Q^{N,q}, the fixed set of the reversing symmetry indexed by
/// q: the condition is rev_hat(tau^q(theta)) = theta with tau the map of
/// tau() above. (The generator whose inverse-power appears in the defining
/// equation is the inverse of that map; the explicit Q-set parametrizations
/// pin this orientation.)
inline QMembership q_membership(const CirPoint& p, int qidx, double tol = 1e-9) {
    const int n = static_cast<int>(p.theta.size());
    if (qidx < 0 || qidx >= n) throw std::invalid_argument("q_membership: need 0 <= q < N");
    const CirPoint image = rev_hat(tau_pow(p, qidx));
    double res = 0.0;
    for (int k = 0; k < n; ++k) res = std::max(res, circ_dist(p.theta[k], image.theta[k]));
    return QMembership{res < tol, res};
}

/// Smallest residual over all reversing symmetries: membership in
/// RC = union_q Q^{N,q}.
inline double rc_residual(const CirPoint& p) {
    double best = two_pi;
    for (int q = 0; q < static_cast<int>(p.theta.size()); ++q) best = std::min(best, q_membership(p, q).residual);
    return best;
}

namespace detail {

inline CirPoint make_cir(std::initializer_list<double> vals) {
    CirPoint p;
    p.theta.assign(vals);
    p.permutation.resize(p.theta.size());
    std::iota(p.permutation.begin(), p.permutation.end(), 0);
    p.boundary = cir_boundary(p.theta);
    return p;
}

} // namespace detail

/// Points from the explicit parametrization of Q^{N,q} for N = 3 or 4.
/// Line segments are sampled uniformly in the open interval; the planar
/// patches Q^{4,1}, Q^{4,3} on a uniform grid restricted to the patch.
inline std::vector<CirPoint> sample_q_set(int n_osc, int qidx, int count) {
    if (n_osc != 3 && n_osc != 4)
        throw std::invalid_argument("sample_q_set: closed-form parametrizations exist only for N = 3, 4");
    if (qidx < 0 || qidx >= n_osc) throw std::invalid_argument("sample_q_set: need 0 <= q < N");
    if (count < 2) throw std::invalid_argument("sample_q_set: need at least 2 samples");

    std::vector<CirPoint> out;
    auto line = [&](auto&& f) {
        for (int i = 0; i < count; ++i) {
            const double t = pi * (i + 1) / static_cast<double>(count + 1);
            out.push_back(f(t));
        }
    };
    auto patch = [&](auto&& f, auto&& valid) {
        int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))) + 1;
        while (true) {
            out.clear();
            for (int i = 1; i <= m && static_cast<int>(out.size()) < count; ++i)
                for (int j = 1; j <= m && static_cast<int>(out.size()) < count; ++j) {
                    const double a = two_pi * i / (m + 1);
                    const double b = two_pi * j / (m + 1);
                    if (valid(a, b)) out.push_back(f(a, b));
                }
            if (static_cast<int>(out.size()) >= count) return;
            ++m;
        }
    };

    using detail::make_cir;
    if (n_osc == 3) {
        switch (qidx) {
        case 0: line([](double t) { return make_cir({0.0, t, two_pi - t}); }); break;
        case 1: line([](double t) { return make_cir({0.0, t, pi + t / 2.0}); }); break;
        case 2: line([](double t) { return make_cir({0.0, t, 2.0 * t}); }); break;
        }
        return out;
    }
    switch (qidx) {
    case 0: line([](double t) { return make_cir({0.0, t, pi, two_pi - t}); }); break;
    case 2: line([](double t) { return make_cir({0.0, t, 2.0 * t, pi + t}); }); break;
    case 1:
        patch([](double a, double b) { return make_cir({0.0, a, b, two_pi - b + a}); },
              [](double a, double b) { return a < b && b < pi + a / 2.0 && b < two_pi; });
        break;
    case 3:
        patch([](double a, double b) { return make_cir({0.0, a, b, a + b}); },
              [](double a, double b) { return a < b && a + b < two_pi; });
        break;
    }
    return out;
}

/// Orthonormal basis of the hyperplane orthogonal to (1,...,1), fixed by
/// Gram-Schmidt on {e_k - e_{k+1}} in index order.
inline std::vector<std::vector<double>> diagonal_complement_basis(int n) {
    std::vector<std::vector<double>> basis;
    for (int k = 0; k + 1 < n; ++k) {
        std::vector<double> v(n, 0.0);
        v[k] = 1.0;
        v[k + 1] = -1.0;
        for (const auto& b : basis) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) d += v[i] * b[i];
            for (int i = 0; i < n; ++i) v[i] -= d * b[i];
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += v[i] * v[i];
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) v[i] /= norm;
        basis.push_back(v);
    }
    return basis;
}

/// Coordinates of a lift in the fixed orthonormal basis of the hyperplane
/// orthogonal to the diagonal. Permutations of theta act as isometries of the image.
inline std::vector<double> project_phases(const PhaseState& theta) {
    const int n = static_cast<int>(theta.size());
    const auto basis = diagonal_complement_basis(n);
    std::vector<double> x(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (int k = 0; k < n; ++k) x[i] += basis[i][k] * theta[k];
    return x;
}

inline std::vector<double> project(const CirPoint& p) { return project_phases(p.theta); }

struct OrderParameter {
    double r = 0.0;           ///< modulus of the mean phasor, in [0, 1]
    double psi = 0.0;         ///< argument; meaningless when psi_defined is false
    bool psi_defined = false; ///< false when r < 1e-14
};

/// Kuramoto order parameter R exp(i psi) = (1/N) sum exp(i theta_k).
inline OrderParameter order_parameter(const PhaseState& theta) {
    std::complex<double> z = 0.0;
    for (double t : theta) z += std::complex<double>(std::cos(t), std::sin(t));
    z /= static_cast<double>(theta.size());
    OrderParameter op;
    op.r = std::abs(z);
    op.psi_defined = op.r >= 1e-14;
    op.psi = op.psi_defined ? std::arg(z) : 0.0;
    return op;
}

/// Growth rate |dZ/dt| of the order parameter Z = (1/N) sum exp(i theta_k)
/// along the flow, at a point of M^(N) = {Z = 0}. Zero means the flow is
/// tangent to M^(N) there. (d(R^2)/dt = 2 Re(conj(Z) dZ/dt) vanishes
/// identically on M^(N), so the first-order tangency measure is |dZ/dt|.)
inline double m_set_tangency(const SystemParams& p, const PhaseState& theta) {
    const OrderParameter op = order_parameter(theta);
    if (op.r >= 1e-10) throw std::invalid_argument("m_set_tangency: point does not lie on M^(N) (R >= 1e-10)");
    const std::vector<double> f = vector_field(p, theta);
    std::complex<double> zdot = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k)
        zdot += std::complex<double>(-std::sin(theta[k]), std::cos(theta[k])) * f[k];
    zdot /= static_cast<double>(theta.size());
    return std::abs(zdot);
}

/// The ascending splay representative (0, 2*pi/N, ..., 2*pi (N-1)/N).
inline PhaseState splay_state(int n) {
    PhaseState th(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) th[static_cast<std::size_t>(k)] = two_pi * k / n;
    return th;
}

} // namespace phasekit
