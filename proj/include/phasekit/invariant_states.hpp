#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasekit/cir.hpp"
#include "phasekit/coupling.hpp"
#include "phasekit/rootfind.hpp"
#include "phasekit/system.hpp"

namespace phasekit {

enum class StabilityClass { sink, source, saddle, centre, degenerate };

inline const char* to_string(StabilityClass c) {
    switch (c) {
    case StabilityClass::sink: return "sink";
    case StabilityClass::source: return "source";
    case StabilityClass::saddle: return "saddle";
    case StabilityClass::centre: return "centre";
    default: return "degenerate";
    }
}

/// Whether eigenvalues refer to the raw reduced flow or to time rescaled by N
/// (the convention used for the even-coupling fixed-point formulas).
enum class TimeConvention { raw, time_rescaled_by_n };

inline const char* to_string(TimeConvention c) {
    return c == TimeConvention::raw ? "raw" : "time_rescaled_by_N";
}

/// Classify from eigenvalue real parts; |Re| <= zero_tol counts as zero.
inline StabilityClass classify(const std::vector<std::complex<double>>& eigs, double zero_tol = 1e-9) {
    int pos = 0, neg = 0, zero = 0;
    bool imag = false;
    for (const auto& l : eigs) {
        if (l.real() > zero_tol) ++pos;
        else if (l.real() < -zero_tol) ++neg;
        else ++zero;
        if (std::fabs(l.imag()) > zero_tol) imag = true;
    }
    const int n = static_cast<int>(eigs.size());
    if (pos > 0 && neg > 0) return StabilityClass::saddle;
    if (pos == n) return StabilityClass::source;
    if (neg == n) return StabilityClass::sink;
    if (zero == n) return imag ? StabilityClass::centre : StabilityClass::degenerate;
    return StabilityClass::degenerate;
}

/// An equilibrium of the phase-difference flow with its linearization.
struct EquilibriumReport {
    ReducedState location; ///< psi_k = theta_{k+1} - theta_1
    IsotropyLabel isotropy;
    std::vector<std::complex<double>> eigenvalues;
    StabilityClass cls = StabilityClass::degenerate;
    TimeConvention convention = TimeConvention::raw;
    bool on_continuum = false;              ///< member of a line/family of equilibria
    std::vector<double> zero_eigenvector;   ///< direction of the neutral eigenvalue, when known
};

/// The single nontrivial eigenvalue of the synchronous state, g'(0)
/// (multiplicity N-1); sync is linearly stable iff it is negative.
inline double sync_eigenvalue(const SystemParams& p) { return p.g.eval(0.0, 1); }

/// Eigenvalues lambda_p = (1/N) sum_{j=1}^{N-1} g'(2 pi j / N) (1 - nu_p^j),
/// nu_p = exp(2 pi i p / N), listed for p = 1..N. lambda_N = 0 exactly
/// (the neutral phase-shift direction); lambda_{N-p} = conj(lambda_p).
inline std::vector<std::complex<double>> splay_eigenvalues(const SystemParams& p) {
    const int n = p.n;
    std::vector<double> eta(static_cast<std::size_t>(n));
    for (int j = 1; j < n; ++j) eta[static_cast<std::size_t>(j)] = p.g.eval(two_pi * j / n, 1);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int pp = 1; pp < n; ++pp) {
        std::complex<double> s = 0.0;
        for (int j = 1; j < n; ++j) {
            const double ang = two_pi * pp * j / n;
            s += eta[static_cast<std::size_t>(j)] *
                 (std::complex<double>(1.0, 0.0) - std::complex<double>(std::cos(ang), std::sin(ang)));
        }
        out[static_cast<std::size_t>(pp - 1)] = s / static_cast<double>(n);
    }
    out[static_cast<std::size_t>(n - 1)] = 0.0;
    return out;
}

/// A two-cluster configuration: p oscillators at phase theta_a, N-p at
/// theta_b, with phase difference phi = theta_a - theta_b.
struct ClusterSpec {
    int p = 1;        ///< cluster size, 1 <= p <= N-1
    double phi = 0.0; ///< phi_p (radians)
};

/// Scalar dynamics on the two-cluster invariant manifold,
///   p g(0) + (N-p) g(phi) - p g(-phi) - (N-p) g(0),
/// which is N times the rate of phi = theta_a - theta_b under the flow.
inline double two_cluster_field(const SystemParams& sys, const ClusterSpec& spec) {
    if (spec.p < 1 || spec.p >= sys.n) throw std::invalid_argument("two_cluster_field: need 1 <= p <= N-1");
    const double n = sys.n, p = spec.p;
    return p * sys.g.eval(0.0) + (n - p) * sys.g.eval(spec.phi) - p * sys.g.eval(-spec.phi) -
           (n - p) * sys.g.eval(0.0);
}

/// Coefficients (c3, c2, c1, c0) of the cubic in t = tan(phi_p / 2) whose
/// roots give the nontrivial two-cluster phase differences, P = p/N:
///   (1-2P) q sin(a) t^3 + [q cos(a) - 2 r cos(b)] t^2
///   + (1-2P) [q sin(a) + 4 r sin(b)] t + [q cos(a) + 2 r cos(b)] = 0.
/// At P = 1/2 it degenerates to the S2xS2 quadratic.
inline std::array<double, 4> two_cluster_cubic(const TwoHarmonicParams& thp, double P) {
    if (!(P > 0.0 && P < 1.0)) throw std::invalid_argument("two_cluster_cubic: need 0 < P < 1");
    const double sa = std::sin(thp.alpha), ca = std::cos(thp.alpha);
    const double sb = std::sin(thp.beta), cb = std::cos(thp.beta);
    const double w = 1.0 - 2.0 * P;
    return {w * thp.q * sa, thp.q * ca - 2.0 * thp.r * cb, w * (thp.q * sa + 4.0 * thp.r * sb),
            thp.q * ca + 2.0 * thp.r * cb};
}

/// Rotating-block line for N = 4 (configurations (0, pi, theta, theta+pi)):
/// the closed-form rate 4 r cos(theta) sin(theta - beta) of the second block
/// in the frame co-rotating at omega, time rescaled by N = 4. Equilibria at
/// theta in {+-pi/2, beta, beta+pi}; degenerate for cos(beta) = 0.
inline double rotating_block_field(double r, double beta, double theta) {
    return 4.0 * r * std::cos(theta) * std::sin(theta - beta);
}

namespace detail {

inline void require_even(const HarmonicCoupling& g, const char* who) {
    if (!g.is_even()) throw std::invalid_argument(std::string(who) + ": coupling must be even");
}

inline EquilibriumReport make_report(ReducedState psi, std::vector<std::complex<double>> eigs,
                                     TimeConvention conv, double class_tol = 1e-9) {
    EquilibriumReport rep;
    rep.location = std::move(psi);
    rep.isotropy = isotropy(lift(rep.location), 1e-8);
    rep.eigenvalues = std::move(eigs);
    rep.cls = classify(rep.eigenvalues, class_tol);
    rep.convention = conv;
    return rep;
}

/// +-sqrt(x) as a complex pair.
inline std::vector<std::complex<double>> pm_sqrt(double radicand) {
    const std::complex<double> s = std::sqrt(std::complex<double>(radicand, 0.0));
    return {s, -s};
}

} // namespace detail

/// Equilibria on Q^{3,0} = {(0, psi, 2 pi - psi)} for even g: roots of
/// g(2 psi) - g(psi) on (0, pi), each with the closed-form eigenvalue pair
///   lambda = +- sqrt( sum_j g'(t_j - t_{j-1}) g'(t_j - t_{j+1}) )
/// of the time-rescaled (by N = 3) difference flow; always real or pure imaginary.
inline std::vector<EquilibriumReport> even_q30_equilibria(const HarmonicCoupling& g) {
    detail::require_even(g, "even_q30_equilibria");
    const auto roots = scan_roots([&](double x) { return g.eval(2.0 * x) - g.eval(x); }, 0.0, pi);
    std::vector<EquilibriumReport> out;
    for (double psi : roots) {
        const double t1 = 0.0, t2 = psi, t3 = two_pi - psi;
        double radicand = 0.0;
        const double th[3] = {t1, t2, t3};
        for (int j = 0; j < 3; ++j) {
            const double prev = th[(j + 2) % 3], next = th[(j + 1) % 3];
            radicand += g.eval(th[j] - prev, 1) * g.eval(th[j] - next, 1);
        }
        out.push_back(detail::make_report({psi, two_pi - psi}, detail::pm_sqrt(radicand),
                                          TimeConvention::time_rescaled_by_n));
    }
    return out;
}

/// Equilibria on Q^{4,0} = {(0, psi, pi, 2 pi - psi)} for even g: psi solving
/// g(psi+pi) = g(psi) and g(2 psi) + g(psi+pi) - g(psi) - g(pi) = 0
/// simultaneously, with spectrum {0, +-sqrt(rad)} of the rescaled flow,
///   rad = 2 (g'p g'q + g'q g'd + g'd g'p) - g'p^2 - g'q^2,
/// g'p = g'(psi), g'q = g'(psi+pi), g'd = g'(2 psi).
inline std::vector<EquilibriumReport> even_q40_equilibria(const HarmonicCoupling& g) {
    detail::require_even(g, "even_q40_equilibria");
    auto h1 = [&](double x) { return g.eval(x + pi) - g.eval(x); };
    auto h2 = [&](double x) { return g.eval(2.0 * x) + g.eval(x + pi) - g.eval(x) - g.eval(pi); };
    std::vector<double> candidates;
    for (double r : scan_roots(h1, 0.0, pi))
        if (std::fabs(h2(r)) < 1e-9) candidates.push_back(r);
    for (double r : scan_roots(h2, 0.0, pi))
        if (std::fabs(h1(r)) < 1e-9) candidates.push_back(r);
    std::sort(candidates.begin(), candidates.end());
    std::vector<EquilibriumReport> out;
    for (double psi : candidates) {
        if (!out.empty() && std::fabs(psi - out.back().location[0]) < 1e-8) continue;
        const double dp = g.eval(psi, 1), dq = g.eval(psi + pi, 1), dd = g.eval(2.0 * psi, 1);
        const double rad = 2.0 * (dp * dq + dq * dd + dd * dp) - dp * dp - dq * dq;
        auto eigs = detail::pm_sqrt(rad);
        eigs.insert(eigs.begin(), std::complex<double>(0.0, 0.0));
        out.push_back(detail::make_report({psi, pi, two_pi - psi}, std::move(eigs),
                                          TimeConvention::time_rescaled_by_n));
    }
    return out;
}

/// A continuum of equilibria with its transverse linearization sampled along it.
struct ContinuumFamily {
    std::string name;
    std::vector<EquilibriumReport> samples;
};

struct Q43Equilibria {
    ContinuumFamily l_minus; ///< (0, phi, pi, pi+phi), lambda = +-2 sqrt(g'(phi) g'(phi+pi))
    ContinuumFamily l_plus;  ///< (0, 0, phi, phi),     lambda = +-2 g'(phi)
    /// Samples of further g-dependent solution branches of
    /// g(psi2 - psi3) = g(psi2 + psi3) inside the ordered patch.
    std::vector<EquilibriumReport> extra;
};

namespace detail {

inline std::vector<double> q43_zero_eigvec(const HarmonicCoupling& g, double psi2, double psi3) {
    const double dm = g.eval(psi2 - psi3, 1), dp = g.eval(psi2 + psi3, 1);
    return {dm + dp, dm - dp, 2.0 * dm};
}

inline std::vector<std::complex<double>> q43_spectrum(const HarmonicCoupling& g, double psi2, double psi3) {
    const double dm = g.eval(psi2 - psi3, 1), dp = g.eval(psi2 + psi3, 1);
    const double d2 = g.eval(psi2, 1), d3 = g.eval(psi3, 1);
    const double rad = 2.0 * dm * (d2 - d3) + 2.0 * dp * (d2 + d3);
    auto eigs = pm_sqrt(rad);
    eigs.insert(eigs.begin(), std::complex<double>(0.0, 0.0));
    return eigs;
}

} // namespace detail

/// Equilibrium structure on Q^{4,3} = {(0, psi2, psi3, psi2+psi3)} for even g:
/// the universal continua L- and L+ with closed-form transverse eigenvalues
/// and the zero-mode eigenvector, plus scan samples of any additional
/// g-dependent branches of the fixed-point equation.
inline Q43Equilibria even_q43_equilibria(const HarmonicCoupling& g, int samples = 20, int scan_grid = 256) {
    detail::require_even(g, "even_q43_equilibria");
    Q43Equilibria out;
    out.l_minus.name = "L-";
    out.l_plus.name = "L+";

    for (int i = 0; i < samples; ++i) {
        const double phi = pi * (i + 1) / static_cast<double>(samples + 1);
        auto rep = detail::make_report({phi, pi, pi + phi}, detail::q43_spectrum(g, phi, pi),
                                       TimeConvention::time_rescaled_by_n);
        rep.on_continuum = true;
        rep.zero_eigenvector = detail::q43_zero_eigvec(g, phi, pi);
        out.l_minus.samples.push_back(std::move(rep));
    }
    for (int i = 0; i < samples; ++i) {
        const double phi = two_pi * (i + 1) / static_cast<double>(samples + 1);
        const double d = g.eval(phi, 1);
        EquilibriumReport rep;
        rep.location = {0.0, phi, phi};
        rep.isotropy = isotropy(lift(rep.location), 1e-8);
        rep.eigenvalues = {{2.0 * d, 0.0}, {-2.0 * d, 0.0}, {0.0, 0.0}};
        rep.cls = classify(rep.eigenvalues);
        rep.convention = TimeConvention::time_rescaled_by_n;
        rep.on_continuum = true;
        rep.zero_eigenvector = detail::q43_zero_eigvec(g, 0.0, phi);
        out.l_plus.samples.push_back(std::move(rep));
    }

    // g-dependent branches: sign scan of h = g(psi2-psi3) - g(psi2+psi3) on the
    // ordered patch, one refined sample per sign-change cell, excluding the
    // universal lines psi3 = pi and the patch boundary.
    auto h = [&](double a, double b) { return g.eval(a - b) - g.eval(a + b); };
    const double step = two_pi / scan_grid;
    for (int i = 1; i < scan_grid; ++i) {
        const double a = i * step;
        for (int j = i + 1; j < scan_grid; ++j) {
            const double b = j * step;
            if (a + b >= two_pi - step) continue;
            const double f00 = h(a, b), f10 = h(a + step, b);
            if ((f00 < 0.0) == (f10 < 0.0) || f00 == 0.0) continue;
            const double aroot = bisect([&](double x) { return h(x, b); }, a, a + step);
            if (std::fabs(b - pi) < 1e-6 || aroot >= b || aroot + b >= two_pi) continue;
            out.extra.push_back(detail::make_report({aroot, b, aroot + b}, detail::q43_spectrum(g, aroot, b),
                                                    TimeConvention::time_rescaled_by_n));
            out.extra.back().on_continuum = true;
            out.extra.back().zero_eigenvector = detail::q43_zero_eigvec(g, aroot, b);
        }
    }
    return out;
}

/// Constant of motion for N = 3 and even g:
/// V(theta) = G(theta_1-theta_2) + G(theta_2-theta_3) + G(theta_3-theta_1),
/// G the primitive of g - mean(g) (the mean cancels in the cyclic sum).
inline double constant_of_motion_n3(const SystemParams& p, const PhaseState& th) {
    if (p.n != 3) throw std::invalid_argument("constant_of_motion_n3: defined for N = 3 only");
    detail::require_even(p.g, "constant_of_motion_n3");
    if (th.size() != 3) throw std::invalid_argument("constant_of_motion_n3: state dimension mismatch");
    const HarmonicCoupling G = antiderivative(p.g).G;
    return G.eval(th[0] - th[1]) + G.eval(th[1] - th[2]) + G.eval(th[2] - th[0]);
}

} // namespace phasekit
