#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "phasekit/angles.hpp"

namespace phasekit {

/// One term q_j * sin(j*phi - alpha_j) of a trigonometric polynomial.
struct Harmonic {
    int index = 1;          ///< harmonic index j >= 1
    double amplitude = 0.0; ///< q_j
    double phase = 0.0;     ///< alpha_j (radians)
};

/// A 2*pi-periodic coupling function stored as a finite trigonometric
/// polynomial
///
///     g(phi) = c0 + sum_j q_j * sin(j*phi - alpha_j),
///
/// with exact derivatives up to second order. Terms with the same index are
/// merged on construction (amplitude-phase addition), so there is at most one
/// entry per harmonic index and the stored amplitude of every harmonic is
/// nonzero. Immutable after construction.
class HarmonicCoupling {
public:
    HarmonicCoupling() = default;

    HarmonicCoupling(double constant, std::vector<Harmonic> terms) : c0_(constant) {
        for (const Harmonic& h : terms) {
            if (h.index < 1) throw std::invalid_argument("HarmonicCoupling: harmonic index must be >= 1");
            add_term(h);
        }
        prune();
    }

    /// Build the even family g(phi) = c[0] + sum_{j>=1} c[j] * cos(j*phi),
    /// using cos(j*phi) = sin(j*phi + pi/2).
    static HarmonicCoupling even_cosine(const std::vector<double>& c) {
        std::vector<Harmonic> terms;
        for (std::size_t j = 1; j < c.size(); ++j)
            terms.push_back({static_cast<int>(j), c[j], -pi / 2.0});
        return HarmonicCoupling(c.empty() ? 0.0 : c[0], std::move(terms));
    }

    double constant_term() const { return c0_; }
    const std::vector<Harmonic>& harmonics() const { return hs_; }

    /// Largest harmonic index with nonzero amplitude (0 for a constant).
    int max_index() const { return hs_.empty() ? 0 : hs_.back().index; }

    /// Value (order 0) or derivative (order 1, 2) at phi, term by term.
    double eval(double phi, int order = 0) const {
        if (order < 0 || order > 2)
            throw std::invalid_argument("HarmonicCoupling::eval: derivative order must be 0, 1 or 2");
        double s = (order == 0) ? c0_ : 0.0;
        for (const Harmonic& h : hs_) {
            const double x = h.index * phi - h.phase;
            const double j = static_cast<double>(h.index);
            if (order == 0)
                s += h.amplitude * std::sin(x);
            else if (order == 1)
                s += h.amplitude * j * std::cos(x);
            else
                s -= h.amplitude * j * j * std::sin(x);
        }
        return s;
    }

    double operator()(double phi) const { return eval(phi, 0); }

    /// Mean over one period; equals the constant term.
    double mean() const { return c0_; }

    /// Upper bound (coefficient l1 norm) for the sup norm of the even part,
    /// |c0| + sum |q_j sin(alpha_j)|.
    double even_part_bound() const {
        double s = std::fabs(c0_);
        for (const Harmonic& h : hs_) s += std::fabs(h.amplitude * std::sin(h.phase));
        return s;
    }

    /// Upper bound for the sup norm of the odd part, sum |q_j cos(alpha_j)|.
    double odd_part_bound() const {
        double s = 0.0;
        for (const Harmonic& h : hs_) s += std::fabs(h.amplitude * std::cos(h.phase));
        return s;
    }

    bool is_even(double tol = 1e-12) const { return odd_part_bound() <= tol; }
    bool is_odd(double tol = 1e-12) const { return even_part_bound() <= tol; }

private:
    void add_term(const Harmonic& h) {
        for (Harmonic& e : hs_) {
            if (e.index == h.index) {
                // q1 sin(x-a1) + q2 sin(x-a2) = Q sin(x-A) via phasor addition
                const std::complex<double> z = e.amplitude * std::exp(std::complex<double>(0, -e.phase)) +
                                               h.amplitude * std::exp(std::complex<double>(0, -h.phase));
                e.amplitude = std::abs(z);
                e.phase = -std::arg(z);
                return;
            }
        }
        hs_.push_back(h);
    }

    void prune() {
        hs_.erase(std::remove_if(hs_.begin(), hs_.end(),
                                 [](const Harmonic& h) { return std::fabs(h.amplitude) < 1e-15; }),
                  hs_.end());
        std::sort(hs_.begin(), hs_.end(), [](const Harmonic& a, const Harmonic& b) { return a.index < b.index; });
    }

    double c0_ = 0.0;
    std::vector<Harmonic> hs_;
};

/// Primitive G of (g - mean(g)) with G(0) = 0, itself a trigonometric
/// polynomial. subtracted_mean records mean(g); when it is nonzero the plain
/// primitive of g would be multivalued on the circle.
struct Primitive {
    HarmonicCoupling G;
    double subtracted_mean = 0.0;
};

/// Antiderivative of g - mean(g), pinned by G(0) = 0.
/// Integrates q sin(j phi - a) to (q/j) sin(j phi - a - pi/2) plus a constant.
inline Primitive antiderivative(const HarmonicCoupling& g) {
    std::vector<Harmonic> terms;
    double at_zero = 0.0;
    for (const Harmonic& h : g.harmonics()) {
        const double amp = h.amplitude / h.index;
        const double ph = h.phase + pi / 2.0;
        terms.push_back({h.index, amp, ph});
        at_zero += amp * std::sin(-ph);
    }
    return Primitive{HarmonicCoupling(-at_zero, std::move(terms)), g.constant_term()};
}

struct EvenOddParts {
    HarmonicCoupling even_part; ///< g_+(phi) = (g(phi)+g(-phi))/2
    HarmonicCoupling odd_part;  ///< g_-(phi) = (g(phi)-g(-phi))/2
};

/// Split into even and odd parts: the even part collects the constant and the
/// -q_j sin(alpha_j) cos(j phi) pieces, the odd part the q_j cos(alpha_j) sin(j phi) pieces.
inline EvenOddParts even_odd_parts(const HarmonicCoupling& g) {
    std::vector<Harmonic> even_terms, odd_terms;
    for (const Harmonic& h : g.harmonics()) {
        even_terms.push_back({h.index, h.amplitude * std::sin(h.phase), pi / 2.0});
        odd_terms.push_back({h.index, h.amplitude * std::cos(h.phase), 0.0});
    }
    return EvenOddParts{HarmonicCoupling(g.constant_term(), std::move(even_terms)),
                        HarmonicCoupling(0.0, std::move(odd_terms))};
}

/// Parameters of the two-harmonic family g(phi) = q sin(phi-alpha) + r sin(2 phi-beta).
struct TwoHarmonicParams {
    double q = -1.0;
    double r = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    HarmonicCoupling coupling() const {
        return HarmonicCoupling(0.0, {{1, q, alpha}, {2, r, beta}});
    }
};

enum class ParamSymmetry {
    flip_q,         ///< (q,r,alpha,beta) -> (-q,r,alpha+pi,beta), g unchanged
    flip_r,         ///< (q,r,alpha,beta) -> (q,-r,alpha,beta+pi), g unchanged
    time_reversal,  ///< q=-1 only: (r,alpha,beta) -> (r,alpha+pi,beta+pi), g -> -g
    phase_reversal, ///< q=-1 only: (r,alpha,beta) -> (r,-alpha,-beta), g(phi) -> -g(-phi)
};

inline TwoHarmonicParams param_symmetry(ParamSymmetry kind, const TwoHarmonicParams& p) {
    TwoHarmonicParams out = p;
    switch (kind) {
    case ParamSymmetry::flip_q:
        out.q = -p.q;
        out.alpha = p.alpha + pi;
        break;
    case ParamSymmetry::flip_r:
        out.r = -p.r;
        out.beta = p.beta + pi;
        break;
    case ParamSymmetry::time_reversal:
        if (std::fabs(p.q + 1.0) > 1e-12)
            throw std::invalid_argument("param_symmetry: time_reversal assumes q = -1");
        out.alpha = p.alpha + pi;
        out.beta = p.beta + pi;
        break;
    case ParamSymmetry::phase_reversal:
        if (std::fabs(p.q + 1.0) > 1e-12)
            throw std::invalid_argument("param_symmetry: phase_reversal assumes q = -1");
        out.alpha = -p.alpha;
        out.beta = -p.beta;
        break;
    }
    return out;
}

/// Result of reducing two-harmonic parameters to the canonical region
/// q = -1, r >= 0, angles in [0, 2*pi). The amplitude scale |q| is reported as
/// a positive time rescale rather than silently applied to trajectories:
/// g_input(phi) = time_rescale * g_canonical(phi).
struct CanonicalForm {
    TwoHarmonicParams params;
    double time_rescale = 1.0;
    /// True when beta lands in [pi, 2*pi): reaching the classification region
    /// beta in [0, pi) would additionally require the time-reversal symmetry,
    /// which negates g and is therefore not applied here.
    bool needs_time_reversal = false;
};

inline CanonicalForm canonicalize(const TwoHarmonicParams& p) {
    if (std::fabs(p.q) < 1e-15) throw std::invalid_argument("canonicalize: q = 0 is degenerate");
    TwoHarmonicParams out = p;
    if (out.q > 0.0) out = param_symmetry(ParamSymmetry::flip_q, out);
    const double scale = -out.q;
    out.q = -1.0;
    out.r /= scale;
    if (out.r < 0.0) out = param_symmetry(ParamSymmetry::flip_r, out);
    out.alpha = wrap_2pi(out.alpha);
    out.beta = wrap_2pi(out.beta);
    return CanonicalForm{out, scale, out.beta >= pi};
}

} // namespace phasekit
