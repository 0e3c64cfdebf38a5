#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "phasekit/cir.hpp"
#include "phasekit/contour.hpp"
#include "phasekit/integrate.hpp"
#include "phasekit/invariant_states.hpp"
#include "phasekit/poly.hpp"
#include "phasekit/rootfind.hpp"
#include "phasekit/system.hpp"

namespace phasekit {

enum class CurveKind { sync_steady, splay_hopf, splay_block, two_cluster_sn, s2s2, scan_detected };

inline const char* to_string(CurveKind k) {
    switch (k) {
    case CurveKind::sync_steady: return "sync_steady";
    case CurveKind::splay_hopf: return "splay_hopf";
    case CurveKind::splay_block: return "splay_block";
    case CurveKind::two_cluster_sn: return "two_cluster_sn";
    case CurveKind::s2s2: return "s2s2";
    default: return "scan_detected";
    }
}

/// A bifurcation locus in the (alpha, r) plane at fixed beta, q = -1.
struct BifurcationCurve {
    CurveKind kind = CurveKind::sync_steady;
    int n_osc = 3;
    double beta = 0.0;
    int p = 0;              ///< cluster size for two_cluster_sn
    bool degenerate = false; ///< cos(beta) = 0 style degeneration
    std::string note;
    std::vector<std::array<double, 2>> points; ///< (alpha, r), sorted by alpha then r
};

/// Coefficients (a0..a4) of the two-cluster bifurcation polynomial
/// a0 + a1 P + a2 P^2 + a3 P^3 + a4 P^4 in P = p/N, for q = -1. Its zero set
/// in P coincides with the zero set of the discriminant of two_cluster_cubic;
/// the two routes differ by a positive constant factor.
inline std::array<double, 5> quartic_in_p(const TwoHarmonicParams& thp) {
    if (std::fabs(thp.q + 1.0) > 1e-12) throw std::invalid_argument("quartic_in_p: requires q = -1");
    const double r = thp.r;
    const double sa = std::sin(thp.alpha), ca = std::cos(thp.alpha);
    const double sb = std::sin(thp.beta), cb = std::cos(thp.beta);
    const double s2a = std::sin(2.0 * thp.alpha);
    const double cab = std::cos(thp.alpha - thp.beta);
    const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;

    const double a4 = 64.0 * sa * (64.0 * r3 * sb * sb * sb - 48.0 * r2 * sb * sb * sa + 12.0 * r * sa * sa * sb -
                                   sa * sa * sa);
    // a3 = -2 a4: the discriminant is even in w = 1 - 2P (only w^0, w^2, w^4
    // terms appear), which locks the P^3 coefficient to -32 E4 = -2 (16 E4)
    const double a3 = 128.0 * sa * (-64.0 * r3 * sb * sb * sb + 48.0 * r2 * sa * sb * sb - 12.0 * r * sa * sa * sb +
                                    sa * sa * sa);
    const double a2 = 256.0 * sb * sb * cb * cb * r4 +
                      256.0 * sb * (20.0 * sa * sb * sb + sb * ca * cb + 4.0 * sa) * r3 +
                      64.0 * (62.0 * sa * sa * cb * cb - s2a * sb * cb - 73.0 * sa * sa + sb * sb) * r2 +
                      64.0 * sa * (23.0 * sa * sa * sb + 7.0 * sa * ca * cb - 5.0 * sb) * r -
                      32.0 * sa * sa * (2.0 * sa * sa + 1.0);
    const double a1 = -256.0 * r4 * sb * sb * cb * cb -
                      256.0 * (4.0 * sa * sb * (sb * sb + 1.0) + sb * sb * ca * cb) * r3 +
                      64.0 * (14.0 * sa * sa * sb * sb + 11.0 * sa * sa - sb * sb + s2a * sb * cb) * r2 +
                      64.0 * (11.0 * sa * sb * ca * ca - 7.0 * sa * sa * ca * cb - 6.0 * sb * sa) * r +
                      32.0 * sa * sa;
    const double a0 = 64.0 * r4 * cb * cb + 64.0 * (3.0 * sa * sb + cab) * r3 +
                      16.0 * (1.0 - 13.0 * sa * sa + cb * cb - 2.0 * ca * cb * cab) * r2 +
                      16.0 * ((3.0 - 8.0 * ca * ca) * cab + 4.0 * ca * cb) * r - 4.0;
    return {a0, a1, a2, a3, a4};
}

inline double quartic_in_p_value(const TwoHarmonicParams& thp, double P) {
    const auto a = quartic_in_p(thp);
    return a[0] + P * (a[1] + P * (a[2] + P * (a[3] + P * a[4])));
}

/// The N = 3, p = 1 two-cluster saddle-node quartic in r, written out in
/// closed form; equals 81 x the discriminant of two_cluster_cubic at P = 1/3.
inline double n3_two_cluster_discriminant(double r, double alpha, double beta) {
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const double sb = std::sin(beta), cb = std::cos(beta);
    const double c4 = 576.0 * (9.0 * cb * cb + sb * sb) * cb * cb;
    const double c3 = 64.0 * (36.0 * sa * cb * cb * sb + 9.0 * ca * cb * sb * sb + 4.0 * sa * sb * sb * sb +
                              81.0 * ca * cb * cb * cb);
    const double c2 = 16.0 * (9.0 * ca * ca * sb * sb - 99.0 * sa * sa * cb * cb - 12.0 * sa * sa * sb * sb -
                              18.0 * sa * ca * cb * sb);
    const double c1 = 16.0 * (63.0 * sa * sa * ca * cb - 45.0 * sa * ca * ca * sb - 81.0 * ca * ca * ca * cb +
                              3.0 * sa * sa * sa * sb);
    // constant term: -4 (sin^2 a + 9 cos^2 a)^2 expanded
    const double c0 = -4.0 * (sa * sa * sa * sa + 18.0 * sa * sa * ca * ca + 81.0 * ca * ca * ca * ca);
    return (((c4 * r + c3) * r + c2) * r + c1) * r + c0;
}

/// Discriminant of the two-cluster cubic at (thp, P), as a function of r.
inline double cluster_discriminant(double r, double alpha, double beta, double P) {
    const auto c = two_cluster_cubic({-1.0, r, alpha, beta}, P);
    return cubic_discriminant(c[0], c[1], c[2], c[3]);
}

/// Closed-form and bisection-detected bifurcation loci at fixed beta over an
/// alpha grid, clipped to 0 <= r <= r_max. Degenerate cases at cos(beta) = 0
/// are emitted flagged rather than silently dropped.
inline std::vector<BifurcationCurve> analytic_curves(int n_osc, double beta, int alpha_points = 180,
                                                     double r_max = 3.0) {
    if (n_osc != 3 && n_osc != 4) throw std::invalid_argument("analytic_curves: N must be 3 or 4");
    if (alpha_points < 8) throw std::invalid_argument("analytic_curves: need at least 8 alpha points");
    const double cb = std::cos(beta);
    std::vector<BifurcationCurve> out;
    auto alphas = [&]() {
        std::vector<double> a(static_cast<std::size_t>(alpha_points));
        for (int i = 0; i < alpha_points; ++i) a[static_cast<std::size_t>(i)] = two_pi * i / alpha_points;
        return a;
    }();

    // sync steady: r = cos(alpha) / (2 cos(beta))
    {
        BifurcationCurve c{CurveKind::sync_steady, n_osc, beta, 0, false, "", {}};
        if (std::fabs(cb) < 1e-12) {
            c.degenerate = true;
            c.note = "cos(beta) = 0: g'(0) is independent of r; locus is the vertical lines cos(alpha) = 0";
            for (double a : {pi / 2.0, 3.0 * pi / 2.0})
                for (int i = 0; i <= 20; ++i) c.points.push_back({a, r_max * i / 20.0});
        } else {
            for (double a : alphas) {
                const double r = std::cos(a) / (2.0 * cb);
                if (r >= 0.0 && r <= r_max) c.points.push_back({a, r});
            }
        }
        out.push_back(std::move(c));
    }

    if (n_osc == 3) {
        // splay Hopf: numeric zero of Re(lambda_1) in r (coincides with sync for two harmonics)
        BifurcationCurve c{CurveKind::splay_hopf, 3, beta, 0, false, "", {}};
        for (double a : alphas) {
            auto re1 = [&](double r) {
                return splay_eigenvalues(SystemParams(3, 0.0, TwoHarmonicParams{-1.0, r, a, beta}.coupling()))[0]
                    .real();
            };
            const double lo = re1(0.0), hi = re1(r_max);
            if ((lo < 0.0) == (hi < 0.0)) continue;
            c.points.push_back({a, bisect(re1, 0.0, r_max)});
        }
        out.push_back(std::move(c));

        BifurcationCurve sn{CurveKind::two_cluster_sn, 3, beta, 1, false, "", {}};
        for (double a : alphas)
            for (double r : scan_roots([&](double r_) { return n3_two_cluster_discriminant(r_, a, beta); }, 0.0,
                                       r_max, 512))
                sn.points.push_back({a, r});
        out.push_back(std::move(sn));
    } else {
        // splay Hopf: cos(alpha) = 0, independent of beta
        BifurcationCurve hopf{CurveKind::splay_hopf, 4, beta, 0, false, "vertical: cos(alpha) = 0", {}};
        for (double a : {pi / 2.0, 3.0 * pi / 2.0})
            for (int i = 0; i <= 20; ++i) hopf.points.push_back({a, r_max * i / 20.0});
        out.push_back(std::move(hopf));

        // splay -> rotating block: lambda^(2) = -2 r cos(beta)
        BifurcationCurve block{CurveKind::splay_block, 4, beta, 0, false, "", {}};
        if (std::fabs(cb) < 1e-12) {
            block.degenerate = true;
            block.note = "cos(beta) = 0: lambda^(2) vanishes identically (degenerate for every alpha, r)";
        } else {
            block.note = "lambda^(2) = -2 r cos(beta) vanishes only on r = 0";
            for (double a : alphas) block.points.push_back({a, 0.0});
        }
        out.push_back(std::move(block));

        // S2xS2 fold: r = |cos(alpha) / (2 cos(beta))|
        BifurcationCurve fold{CurveKind::s2s2, 4, beta, 2, false, "", {}};
        if (std::fabs(cb) < 1e-12) {
            fold.degenerate = true;
            fold.note = "cos(beta) = 0: the S2xS2 quadratic loses its r dependence";
        } else {
            for (double a : alphas) {
                const double r = std::fabs(std::cos(a) / (2.0 * cb));
                if (r <= r_max) fold.points.push_back({a, r});
            }
        }
        out.push_back(std::move(fold));

        BifurcationCurve sn{CurveKind::two_cluster_sn, 4, beta, 1, false, "", {}};
        for (double a : alphas)
            for (double r : scan_roots([&](double r_) { return cluster_discriminant(r_, a, beta, 0.25); }, 0.0,
                                       r_max, 512))
                sn.points.push_back({a, r});
        out.push_back(std::move(sn));
    }

    for (auto& c : out)
        std::sort(c.points.begin(), c.points.end(), [](const std::array<double, 2>& x, const std::array<double, 2>& y) {
            return (x[0] != y[0]) ? x[0] < y[0] : x[1] < y[1];
        });
    return out;
}

struct FindDiagnostics {
    int candidate_cells = 0;
    int newton_failures = 0;
};

/// Equilibria of the reduced flow on T^{N-1} (N - 1 <= 3): Newton refinement
/// from every sign-structure candidate cell of a uniform grid, deduplicated
/// circularly, classified from the reduced Jacobian spectrum with isotropy
/// attached. Newton failures are counted, not fatal.
inline std::vector<EquilibriumReport> find_equilibria(const SystemParams& p, int grid_per_dim = 48,
                                                      double tol = 1e-10, FindDiagnostics* diag = nullptr) {
    const int d = p.n - 1;
    if (d > 3) throw std::invalid_argument("find_equilibria: scan limited to N - 1 <= 3");
    if (grid_per_dim < 4) throw std::invalid_argument("find_equilibria: grid too coarse");

    auto fun = [&](const std::vector<double>& x) { return reduced_field(p, x); };
    auto jac = [&](const std::vector<double>& x) { return reduced_jacobian(p, x); };

    const double h = two_pi / grid_per_dim;
    std::vector<std::vector<double>> found;
    FindDiagnostics local;

    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    const int ncells = static_cast<int>(std::pow(grid_per_dim, d) + 0.5);
    for (int cell = 0; cell < ncells; ++cell) {
        int rem = cell;
        for (int k = 0; k < d; ++k) {
            idx[static_cast<std::size_t>(k)] = rem % grid_per_dim;
            rem /= grid_per_dim;
        }
        // corner values: does every component change sign over the cell?
        bool candidate = true;
        std::vector<double> lo_val(static_cast<std::size_t>(d), 1e300), hi_val(static_cast<std::size_t>(d), -1e300);
        for (int corner = 0; corner < (1 << d); ++corner) {
            std::vector<double> x(static_cast<std::size_t>(d));
            for (int k = 0; k < d; ++k)
                x[static_cast<std::size_t>(k)] = (idx[static_cast<std::size_t>(k)] + ((corner >> k) & 1) + 0.5) * h;
            const auto f = fun(x);
            for (int k = 0; k < d; ++k) {
                lo_val[static_cast<std::size_t>(k)] = std::min(lo_val[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k)]);
                hi_val[static_cast<std::size_t>(k)] = std::max(hi_val[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k)]);
            }
        }
        for (int k = 0; k < d; ++k)
            if (lo_val[static_cast<std::size_t>(k)] > 0.0 || hi_val[static_cast<std::size_t>(k)] < 0.0) candidate = false;
        if (!candidate) continue;
        ++local.candidate_cells;

        std::vector<double> x0(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) x0[static_cast<std::size_t>(k)] = (idx[static_cast<std::size_t>(k)] + 1.0) * h;
        const auto root = newton_nd(fun, jac, x0, tol);
        if (!root) {
            ++local.newton_failures;
            continue;
        }
        std::vector<double> r = *root;
        for (double& v : r) v = wrap_2pi(v);
        bool dup = false;
        for (const auto& e : found) {
            double dist = 0.0;
            for (int k = 0; k < d; ++k) dist = std::max(dist, circ_dist(e[static_cast<std::size_t>(k)], r[static_cast<std::size_t>(k)]));
            if (dist < 1e-8) { dup = true; break; }
        }
        if (!dup) found.push_back(r);
    }

    std::sort(found.begin(), found.end());
    std::vector<EquilibriumReport> out;
    for (const auto& r : found) {
        EquilibriumReport rep;
        rep.location = r;
        rep.isotropy = isotropy(lift(r), 1e-8);
        rep.eigenvalues = eigenvalues(reduced_jacobian(p, r));
        rep.cls = classify(rep.eigenvalues, 1e-9);
        rep.convention = TimeConvention::raw;
        out.push_back(std::move(rep));
    }
    if (diag) *diag = local;
    return out;
}

/// An equilibrium of the reduced flow restricted to the S2 boundary face
/// {(0, 0, u, v)} of the N = 4 region, classified within the face.
struct FaceEquilibrium {
    double u = 0.0, v = 0.0;
    std::array<std::complex<double>, 2> eigenvalues{}; ///< of the time-rescaled in-face Jacobian
    StabilityClass cls = StabilityClass::degenerate;
    double rc_residual = 0.0; ///< min over q of the Q^{4,q} membership residual
    bool in_rc = false;       ///< rc_residual < 1e-8
};

struct IntegrabilityReport {
    std::vector<FaceEquilibrium> equilibria; ///< isolated face equilibria, sorted by (u, v)
    bool has_sink = false;
    bool has_source = false;
    bool sink_source_pairs = false; ///< a sink whose reversal image is a detected source
    /// L+ samples (phi, transverse eigenvalue 2 g'(phi)) along the diagonal edge.
    std::vector<std::array<double, 2>> l_plus;
    int newton_failures = 0;
};

namespace detail {

/// Face field: time-rescaled reduced flow on (0, 0, u, v), components (du, dv).
inline std::array<double, 2> face_field(const SystemParams& p, double u, double v) {
    const auto f = vector_field(p, {0.0, 0.0, u, v});
    return {4.0 * (f[2] - f[0]), 4.0 * (f[3] - f[0])};
}

inline Matrix face_jacobian(const SystemParams& p, double u, double v) {
    const Matrix full = jacobian(p, {0.0, 0.0, u, v});
    Matrix m(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m(a, b) = 4.0 * (full(2 + a, 2 + b) - full(0, 2 + b));
    return m;
}

} // namespace detail

/// Scan the S2 boundary face of the N = 4 region for isolated equilibria of
/// the time-rescaled reduced flow, classify them within the face, test
/// membership in RC = union Q^{4,q}, and report sink/source pairing (the
/// non-integrability diagnostic). Points on the face edges and on the L+
/// diagonal continuum are excluded from the isolated list; L+ is reported
/// separately with its transverse eigenvalues.
inline IntegrabilityReport integrability_report(const HarmonicCoupling& g, int face_grid = 128) {
    if (!g.is_even()) throw std::invalid_argument("integrability_report: coupling must be even");
    if (face_grid < 16) throw std::invalid_argument("integrability_report: face_grid too coarse");
    const SystemParams p(4, 0.0, g);

    IntegrabilityReport rep;
    const double h = two_pi / face_grid;
    std::vector<std::array<double, 2>> found;

    auto fun = [&](const std::vector<double>& x) {
        const auto f = detail::face_field(p, x[0], x[1]);
        return std::vector<double>{f[0], f[1]};
    };
    auto jac = [&](const std::vector<double>& x) { return detail::face_jacobian(p, x[0], x[1]); };

    for (int i = 0; i < face_grid; ++i) {
        for (int j = i + 1; j < face_grid; ++j) {
            // cell corners (u, v) in the open triangle 0 < u < v < 2 pi
            double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
            bool inside = true;
            for (int corner = 0; corner < 4; ++corner) {
                const double u = (i + (corner & 1) + 0.5) * h;
                const double v = (j + ((corner >> 1) & 1) + 0.5) * h;
                if (u >= v || v >= two_pi) { inside = false; break; }
                const auto f = detail::face_field(p, u, v);
                lo0 = std::min(lo0, f[0]); hi0 = std::max(hi0, f[0]);
                lo1 = std::min(lo1, f[1]); hi1 = std::max(hi1, f[1]);
            }
            if (!inside || lo0 > 0.0 || hi0 < 0.0 || lo1 > 0.0 || hi1 < 0.0) continue;
            const auto root = newton_nd(fun, jac, {(i + 1.0) * h, (j + 1.0) * h}, 1e-12);
            if (!root) {
                ++rep.newton_failures;
                continue;
            }
            const double u = (*root)[0], v = (*root)[1];
            // exclude the continuum (diagonal) and the face edges
            if (!(u > 1e-6 && v < two_pi - 1e-6 && v - u > 1e-6)) continue;
            bool dup = false;
            for (const auto& e : found)
                if (std::fabs(e[0] - u) < 1e-8 && std::fabs(e[1] - v) < 1e-8) { dup = true; break; }
            if (!dup) found.push_back({u, v});
        }
    }
    std::sort(found.begin(), found.end());

    for (const auto& uv : found) {
        FaceEquilibrium eq;
        eq.u = uv[0];
        eq.v = uv[1];
        const auto ev = eigenvalues(detail::face_jacobian(p, eq.u, eq.v));
        eq.eigenvalues = {ev[0], ev[1]};
        eq.cls = classify({ev[0], ev[1]}, 1e-7);
        eq.rc_residual = rc_residual(canonical_representative({0.0, 0.0, eq.u, eq.v}));
        eq.in_rc = eq.rc_residual < 1e-8;
        rep.equilibria.push_back(eq);
        if (eq.cls == StabilityClass::sink) rep.has_sink = true;
        if (eq.cls == StabilityClass::source) rep.has_source = true;
    }

    // reversal pairing: the image of (u, v) under rev_hat is (2 pi - v, 2 pi - u)
    for (const auto& s : rep.equilibria) {
        if (s.cls != StabilityClass::sink) continue;
        for (const auto& t : rep.equilibria) {
            if (t.cls != StabilityClass::source) continue;
            if (std::fabs(t.u - (two_pi - s.v)) < 1e-6 && std::fabs(t.v - (two_pi - s.u)) < 1e-6)
                rep.sink_source_pairs = true;
        }
    }

    for (int i = 1; i < 40; ++i) {
        const double phi = two_pi * i / 40.0;
        rep.l_plus.push_back({phi, 2.0 * g.eval(phi, 1)});
    }
    return rep;
}

/// A projected trajectory with a region index per point (for N = 4 even
/// coupling: which of the four components cut out by Q^{4,1} and Q^{4,3}).
struct ProjectedPath {
    std::vector<ReducedState> psi;           ///< phase differences per sample
    std::vector<std::vector<double>> points; ///< projected R^{N-1} coordinates
    std::vector<int> region;                 ///< same length as points
};

struct PortraitOptions {
    bool backward = false; ///< also integrate each seed for -T
    int samples = 400;
    IntegrateOptions integ;
    int find_grid = 48;
    int level_grid = 96;  ///< marching-squares grid for N=3 level sets
    int n_levels = 12;
    int q_samples = 64;
};

struct PortraitData {
    int n_osc = 3;
    std::vector<EquilibriumReport> equilibria;
    std::vector<ProjectedPath> trajectories;
    /// Q-set overlays: per (N, q) a list of projected sample points.
    std::vector<std::vector<std::vector<double>>> q_overlays;
    /// Level-set segments of the N=3 constant of motion, in projected coordinates.
    std::vector<ContourSegment> level_sets;
};

namespace detail {

/// Region index from the side signs of the Q^{4,1} and Q^{4,3} planes.
inline int q_region(const ReducedState& psi) {
    const double h41 = wrap_pm_pi(psi[2] + psi[1] - psi[0]);
    const double h43 = wrap_pm_pi(psi[2] - psi[1] - psi[0]);
    return (h41 > 0.0 ? 1 : 0) | (h43 > 0.0 ? 2 : 0);
}

} // namespace detail

/// Integrate seeds, project onto the plane/space orthogonal to the diagonal,
/// attach equilibria, Q-set overlays and (N = 3, even g) level sets of the
/// constant of motion.
inline PortraitData make_portrait(const SystemParams& p, const std::vector<PhaseState>& seeds, double T,
                                  const PortraitOptions& opt = {}) {
    if (p.n != 3 && p.n != 4) throw std::invalid_argument("make_portrait: N must be 3 or 4");
    PortraitData out;
    out.n_osc = p.n;
    out.equilibria = find_equilibria(p, opt.find_grid);

    const bool tag_regions = (p.n == 4) && p.g.is_even();
    auto add_run = [&](const PhaseState& s0, double horizon) {
        IntegrateOptions io = opt.integ;
        io.sample_times = linspace_times(horizon, opt.samples);
        const Trajectory tr = integrate(p, s0, horizon, io);
        ProjectedPath path;
        for (const auto& st : tr.states) {
            ReducedState psi(static_cast<std::size_t>(p.n - 1));
            for (int k = 1; k < p.n; ++k) psi[static_cast<std::size_t>(k - 1)] = wrap_2pi(st[static_cast<std::size_t>(k)] - st[0]);
            path.points.push_back(project_phases(lift(psi)));
            path.region.push_back(tag_regions ? detail::q_region(psi) : 0);
            path.psi.push_back(std::move(psi));
        }
        out.trajectories.push_back(std::move(path));
    };
    for (const auto& s0 : seeds) {
        add_run(s0, T);
        if (opt.backward) add_run(s0, -T);
    }

    for (int q = 0; q < p.n; ++q) {
        std::vector<std::vector<double>> overlay;
        for (const auto& pt : sample_q_set(p.n, q, opt.q_samples)) overlay.push_back(project(pt));
        out.q_overlays.push_back(std::move(overlay));
    }

    if (p.n == 3 && p.g.is_even()) {
        auto value = [&](double a, double b) { return constant_of_motion_n3(p, {0.0, a, b}); };
        double vmin = 1e300, vmax = -1e300;
        for (int i = 0; i <= 64; ++i)
            for (int j = 0; j <= 64; ++j) {
                const double v = value(two_pi * i / 64.0, two_pi * j / 64.0);
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        std::vector<double> levels;
        for (int l = 1; l <= opt.n_levels; ++l)
            levels.push_back(vmin + (vmax - vmin) * l / (opt.n_levels + 1.0));
        const auto segs = marching_squares(value, 0.0, two_pi, 0.0, two_pi, opt.level_grid, levels);
        for (const auto& s : segs) {
            const auto a = project_phases({0.0, s.a[0], s.a[1]});
            const auto b = project_phases({0.0, s.b[0], s.b[1]});
            out.level_sets.push_back({s.level, {a[0], a[1]}, {b[0], b[1]}});
        }
    }
    return out;
}

} // namespace phasekit
