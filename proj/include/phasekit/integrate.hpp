#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasekit/system.hpp"

namespace phasekit {

struct IntegrateOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    /// Output times, monotone in the direction of integration, within [0, T].
    /// Empty: record every accepted step instead.
    std::vector<double> sample_times;
    double max_step = 0.0; ///< 0 = no cap
    /// Fixed magnitude for the relative-error weight; 0 uses |y| per
    /// component. Phase variables wind up linearly in time, so |y|-relative
    /// control slackens with t; integrate() pins the weight to 2*pi, the
    /// natural scale of an angle.
    double error_scale = 0.0;
};

/// Solution samples plus step diagnostics.
struct Trajectory {
    std::vector<double> times;
    std::vector<PhaseState> states; ///< unwrapped angles (normalize at output boundaries)
    long accepted = 0;
    long rejected = 0;
    double max_error_estimate = 0.0; ///< largest accepted scaled local error
};

class StepUnderflow : public std::runtime_error {
public:
    explicit StepUnderflow(double t)
        : std::runtime_error("integrate: step size underflow at t = " + std::to_string(t)), t_reached(t) {}
    double t_reached;
};

/// Adaptive Dormand-Prince 5(4) with PI step-size control. Steps land exactly
/// on the requested sample times, so recorded states carry full step accuracy.
/// RHS signature: void(double t, const std::vector<double>& y, std::vector<double>& dydt).
template <class Rhs>
Trajectory integrate_ode(const Rhs& rhs, const std::vector<double>& y0, double T, const IntegrateOptions& opt) {
    if (T == 0.0) throw std::invalid_argument("integrate: T must be nonzero");
    if (opt.rel_tol <= 0.0 || opt.abs_tol <= 0.0) throw std::invalid_argument("integrate: tolerances must be positive");
    const double dir = (T > 0.0) ? 1.0 : -1.0;

    std::vector<double> samples = opt.sample_times;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i] * dir < 0.0 || samples[i] * dir > T * dir)
            throw std::invalid_argument("integrate: sample time outside [0, T]");
        if (i > 0 && (samples[i] - samples[i - 1]) * dir <= 0.0)
            throw std::invalid_argument("integrate: sample times must be strictly monotone");
    }

    const std::size_t n = y0.size();
    std::vector<double> y = y0, ynew(n), yerr(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);

    Trajectory out;
    double t = 0.0;
    std::size_t next_sample = 0;
    auto record = [&](double tt, const std::vector<double>& yy) {
        out.times.push_back(tt);
        out.states.push_back(yy);
    };
    if (samples.empty()) record(t, y);
    while (next_sample < samples.size() && samples[next_sample] == 0.0) {
        record(0.0, y);
        ++next_sample;
    }

    rhs(t, y, k1);
    double h = dir * std::min(1e-2 * std::fabs(T), 1e-3);
    if (opt.max_step > 0.0) h = dir * std::min(std::fabs(h), opt.max_step);
    double err_prev = 1.0;

    // Dormand-Prince coefficients
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double t_end = T;
    while ((t_end - t) * dir > 0.0) {
        double h_try = h;
        // shorten to hit the next sample time or the end exactly
        double t_stop = t_end;
        if (next_sample < samples.size() && (samples[next_sample] - t_stop) * dir < 0.0) t_stop = samples[next_sample];
        if ((t + h_try - t_stop) * dir > 0.0) h_try = t_stop - t;
        if (std::fabs(h_try) < 1e-14 * std::max(1.0, std::fabs(t))) {
            // a final step can land within rounding of t_end; that is arrival, not underflow
            if (std::fabs(t_end - t) <= 1e-12 * std::max(1.0, std::fabs(t_end))) break;
            throw StepUnderflow(t);
        }

        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h_try * a21 * k1[i];
        rhs(t + h_try / 5.0, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h_try * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + 3.0 * h_try / 10.0, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h_try * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + 4.0 * h_try / 5.0, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h_try * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + 8.0 * h_try / 9.0, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h_try * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h_try, tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h_try * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h_try, ynew, k7);
        for (std::size_t i = 0; i < n; ++i)
            yerr[i] = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag =
                (opt.error_scale > 0.0) ? opt.error_scale : std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            const double sk = opt.abs_tol + opt.rel_tol * mag;
            const double q = yerr[i] / sk;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0 || !(err == err)) {
            if (!(err == err)) throw StepUnderflow(t); // NaN from the RHS
            t += h_try;
            y = ynew;
            k1 = k7; // FSAL
            ++out.accepted;
            out.max_error_estimate = std::max(out.max_error_estimate, err);
            if (samples.empty()) {
                record(t, y);
            } else {
                while (next_sample < samples.size() && std::fabs(t - samples[next_sample]) <= 1e-12 * std::max(1.0, std::fabs(t))) {
                    record(samples[next_sample], y);
                    ++next_sample;
                }
            }
            const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2) * std::pow(err_prev, 0.08);
            err_prev = std::max(err, 1e-10);
            h = h_try * std::min(5.0, std::max(0.2, fac));
        } else {
            ++out.rejected;
            h = h_try * std::max(0.1, 0.9 * std::pow(err, -0.2));
        }
        if (opt.max_step > 0.0 && std::fabs(h) > opt.max_step) h = dir * opt.max_step;
    }
    // flush samples that coincide with the endpoint up to rounding
    while (next_sample < samples.size()) {
        record(samples[next_sample], y);
        ++next_sample;
    }
    return out;
}

/// Integrate the oscillator system from theta0 over [0, T] (T < 0 integrates backward).
inline Trajectory integrate(const SystemParams& p, const PhaseState& th0, double T,
                            const IntegrateOptions& opt = {}) {
    if (static_cast<int>(th0.size()) != p.n) throw std::invalid_argument("integrate: state dimension mismatch");
    auto rhs = [&p](double, const std::vector<double>& y, std::vector<double>& dydt) { dydt = vector_field(p, y); };
    IntegrateOptions o = opt;
    if (o.error_scale == 0.0) o.error_scale = two_pi;
    return integrate_ode(rhs, th0, T, o);
}

/// Evenly spaced sample times over [0, T] including both endpoints.
inline std::vector<double> linspace_times(double T, int count) {
    std::vector<double> ts(static_cast<std::size_t>(std::max(2, count)));
    const int m = static_cast<int>(ts.size()) - 1;
    for (int i = 0; i <= m; ++i) ts[static_cast<std::size_t>(i)] = T * static_cast<double>(i) / m;
    return ts;
}

} // namespace phasekit
