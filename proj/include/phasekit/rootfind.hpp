#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "phasekit/linalg.hpp"

namespace phasekit {

/// Bisection on a bracket f(a) f(b) <= 0, run to machine resolution of the
/// interval (or until it shrinks below xtol when one is given).
template <class F>
double bisect(const F& f, double a, double b, double xtol = 0.0) {
    double fa = f(a);
    if (fa == 0.0) return a;
    if (f(b) == 0.0) return b;
    for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// All sign-change roots of f on the open interval (lo, hi), located by a
/// uniform midpoint scan with `cells` intervals and refined by bisection.
/// An exact grid zero is taken as a root directly. Duplicates within
/// merge_tol collapse.
template <class F>
std::vector<double> scan_roots(const F& f, double lo, double hi, int cells = 2048, double merge_tol = 1e-8) {
    std::vector<double> roots;
    const double step = (hi - lo) / cells;
    double xprev = lo + 0.5 * step;
    double fprev = f(xprev);
    if (fprev == 0.0) {
        roots.push_back(xprev);
        fprev = f(xprev + 0.25 * step);
    }
    for (int i = 1; i < cells; ++i) {
        const double x = lo + (i + 0.5) * step;
        double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
            fx = f(x + 0.25 * step);
        } else if ((fprev < 0.0) != (fx < 0.0)) {
            roots.push_back(bisect(f, xprev, x));
        }
        xprev = x;
        fprev = fx;
    }
    std::vector<double> merged;
    for (double r : roots) {
        if (merged.empty() || std::fabs(r - merged.back()) > merge_tol) merged.push_back(r);
    }
    return merged;
}

/// Damped Newton for F: R^n -> R^n with a supplied Jacobian.
/// Returns the root when ||F|| drops below tol within max_iter, else nullopt.
inline std::optional<std::vector<double>>
newton_nd(const std::function<std::vector<double>(const std::vector<double>&)>& f,
          const std::function<Matrix(const std::vector<double>&)>& jac, std::vector<double> x, double tol = 1e-12,
          int max_iter = 60) {
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double e : v) s += e * e;
        return std::sqrt(s);
    };
    double fn = norm(f(x));
    for (int it = 0; it < max_iter; ++it) {
        if (fn < tol) return x;
        std::vector<double> fx = f(x);
        std::vector<double> step;
        try {
            step = solve_linear(jac(x), fx);
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
        double lambda = 1.0;
        for (int back = 0; back < 8; ++back) {
            std::vector<double> xn = x;
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] -= lambda * step[i];
            const double fnn = norm(f(xn));
            if (fnn < fn || back == 7) {
                x = xn;
                fn = fnn;
                break;
            }
            lambda *= 0.5;
        }
    }
    return (fn < tol) ? std::optional<std::vector<double>>(x) : std::nullopt;
}

} // namespace phasekit
