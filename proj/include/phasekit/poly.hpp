#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace phasekit {

/// Discriminant of c3 t^3 + c2 t^2 + c1 t + c0:
/// 18 c3 c2 c1 c0 - 4 c2^3 c0 + c2^2 c1^2 - 4 c3 c1^3 - 27 c3^2 c0^2.
/// Positive iff three distinct real roots, zero iff a repeated root
/// (including the degenerations at c3 = 0).
inline double cubic_discriminant(double c3, double c2, double c1, double c0) {
    return 18.0 * c3 * c2 * c1 * c0 - 4.0 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
           4.0 * c3 * c1 * c1 * c1 - 27.0 * c3 * c3 * c0 * c0;
}

/// Roots of a t^2 + b t + c (a != 0), as complex numbers. A discriminant at
/// rounding level relative to the coefficients is treated as an exact double
/// root, which is then computed to full precision as -b / (2a).
inline std::vector<std::complex<double>> solve_quadratic(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    if (std::fabs(disc) <= 1e-13 * (b * b + std::fabs(4.0 * a * c))) {
        const double m = -b / (2.0 * a);
        return {{m, 0.0}, {m, 0.0}};
    }
    if (disc >= 0.0) {
        // avoid cancellation: compute the large-magnitude root first
        const double s = (b >= 0.0) ? -0.5 * (b + std::sqrt(disc)) : -0.5 * (b - std::sqrt(disc));
        const double r1 = s / a;
        const double r2 = (s != 0.0) ? c / s : -b / a - r1;
        return {{r1, 0.0}, {r2, 0.0}};
    }
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * a);
    return {{re, im}, {re, -im}};
}

namespace detail {

inline std::complex<double> poly3_eval(double c3, double c2, double c1, double c0, std::complex<double> z) {
    return ((c3 * z + c2) * z + c1) * z + c0;
}

inline std::complex<double> poly3_deriv(double c3, double c2, double c1, std::complex<double> z) {
    return (3.0 * c3 * z + 2.0 * c2) * z + c1;
}

} // namespace detail

/// Roots of c3 t^3 + c2 t^2 + c1 t + c0 as complex numbers.
/// Degrades gracefully to the quadratic / linear case when leading
/// coefficients vanish (relative to the coefficient scale). Roots are
/// polished by a few complex Newton steps on the original polynomial.
inline std::vector<std::complex<double>> solve_cubic(double c3, double c2, double c1, double c0) {
    const double scale = std::max({std::fabs(c3), std::fabs(c2), std::fabs(c1), std::fabs(c0)});
    if (scale == 0.0) return {};
    if (std::fabs(c3) < 1e-14 * scale) {
        if (std::fabs(c2) < 1e-14 * scale) {
            if (std::fabs(c1) < 1e-14 * scale) return {};
            return {{-c0 / c1, 0.0}};
        }
        return solve_quadratic(c2, c1, c0);
    }

    constexpr double pi = 3.14159265358979323846;
    // normalized: t^3 + a t^2 + b t + c
    const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (a * (2.0 * a * a - 9.0 * b) + 27.0 * c) / 54.0;
    const double r2 = r * r, q3 = q * q * q;

    std::vector<std::complex<double>> roots;
    if (r2 < q3) {
        // three real roots (trigonometric form)
        double t = r / std::sqrt(q3);
        t = std::min(1.0, std::max(-1.0, t));
        const double th = std::acos(t);
        const double m = -2.0 * std::sqrt(q);
        roots = {{m * std::cos(th / 3.0) - a / 3.0, 0.0},
                 {m * std::cos((th + 2.0 * pi) / 3.0) - a / 3.0, 0.0},
                 {m * std::cos((th - 2.0 * pi) / 3.0) - a / 3.0, 0.0}};
    } else {
        const double u3 = -r - std::copysign(std::sqrt(r2 - q3), r);
        const double u = std::cbrt(u3);
        const double v = (u != 0.0) ? q / u : 0.0;
        const double re = -0.5 * (u + v) - a / 3.0;
        const double im = 0.5 * std::sqrt(3.0) * (u - v);
        roots = {{u + v - a / 3.0, 0.0}, {re, im}, {re, -im}};
    }

    for (auto& z : roots) {
        for (int it = 0; it < 3; ++it) {
            const std::complex<double> f = detail::poly3_eval(c3, c2, c1, c0, z);
            const std::complex<double> df = detail::poly3_deriv(c3, c2, c1, z);
            if (std::abs(df) < 1e-300) break;
            z -= f / df;
        }
        if (std::fabs(z.imag()) < 1e-12 * (1.0 + std::fabs(z.real()))) z = {z.real(), 0.0};
    }

    // sharpen multiple roots, which direct formulas resolve only to
    // eps^(1/2) / eps^(1/3): a triple root is the root of p'', a double root
    // a simple (well-conditioned) root of p'
    {
        const double sc = 1.0 + std::max({std::abs(roots[0]), std::abs(roots[1]), std::abs(roots[2])});
        const double d01 = std::abs(roots[0] - roots[1]);
        const double d02 = std::abs(roots[0] - roots[2]);
        const double d12 = std::abs(roots[1] - roots[2]);
        auto residual_small = [&](double m) {
            const double val = std::fabs(((c3 * m + c2) * m + c1) * m + c0);
            const double mag = std::fabs(c3 * m * m * m) + std::fabs(c2 * m * m) + std::fabs(c1 * m) +
                               std::fabs(c0) + 1e-300;
            return val <= 1e-9 * mag;
        };
        const double m3 = -c2 / (3.0 * c3);
        if (d01 < 5e-4 * sc && d02 < 5e-4 * sc && d12 < 5e-4 * sc && residual_small(m3)) {
            roots = {{m3, 0.0}, {m3, 0.0}, {m3, 0.0}};
        } else {
            int i = -1, j = -1, k = -1;
            if (d01 < 1e-6 * sc) { i = 0; j = 1; k = 2; }
            else if (d02 < 1e-6 * sc) { i = 0; j = 2; k = 1; }
            else if (d12 < 1e-6 * sc) { i = 1; j = 2; k = 0; }
            if (i >= 0) {
                const auto crit = solve_quadratic(3.0 * c3, 2.0 * c2, c1);
                const std::complex<double> mid = 0.5 * (roots[static_cast<std::size_t>(i)] +
                                                        roots[static_cast<std::size_t>(j)]);
                double m = mid.real();
                double best = 1e300;
                for (const auto& w : crit) {
                    if (std::fabs(w.imag()) > 1e-9 * sc) continue;
                    if (std::abs(w - mid) < best) { best = std::abs(w - mid); m = w.real(); }
                }
                if (residual_small(m)) {
                    roots[static_cast<std::size_t>(i)] = {m, 0.0};
                    roots[static_cast<std::size_t>(j)] = {m, 0.0};
                    roots[static_cast<std::size_t>(k)] = {-c2 / c3 - 2.0 * m, 0.0};
                }
            }
        }
    }
    return roots;
}

/// Real roots of the cubic, using solve_cubic and an imaginary-part cutoff.
inline std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0, double imag_tol = 1e-9) {
    std::vector<double> out;
    for (const auto& z : solve_cubic(c3, c2, c1, c0))
        if (std::fabs(z.imag()) <= imag_tol * (1.0 + std::fabs(z.real()))) out.push_back(z.real());
    return out;
}

} // namespace phasekit
