#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "phasekit/coupling.hpp"

using namespace phasekit;

namespace {
double sup_diff(const HarmonicCoupling& a, const HarmonicCoupling& b, int grid = 1000) {
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double phi = two_pi * i / grid;
        worst = std::max(worst, std::fabs(a.eval(phi) - b.eval(phi)));
    }
    return worst;
}
} // namespace

TEST_CASE("eval: closed-form values and derivative orders") {
    const HarmonicCoupling g(0.0, {{1, -1.0, 0.0}}); // -sin(phi)
    CHECK(g.eval(pi / 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g.eval(0.0, 1) == doctest::Approx(-1.0).epsilon(1e-15));

    // g'(0) = q cos(alpha) + 2 r cos(beta); zero at r = cos(alpha) / (2 cos(beta))
    const TwoHarmonicParams at_threshold{-1.0, 0.5, 0.0, 0.0};
    CHECK(at_threshold.coupling().eval(0.0, 1) == doctest::Approx(0.0).epsilon(1e-15));

    const HarmonicCoupling even = HarmonicCoupling::even_cosine({0.0, 1.0, 1.0});
    CHECK(even.eval(0.0) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(g.eval(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(g.eval(0.0, -1), std::invalid_argument);
}

TEST_CASE("eval: 2 pi periodicity to machine precision") {
    for (int trial = 0; trial < 10; ++trial) {
        const HarmonicCoupling g = oracle::random_coupling(4, 1.5, 0.5);
        for (int i = 0; i < 100; ++i) {
            const double phi = oracle::uniform(-10.0, 10.0);
            CHECK(std::fabs(g.eval(phi + two_pi) - g.eval(phi)) < 1e-13);
        }
    }
}

TEST_CASE("eval: closed-form derivatives match finite differences") {
    for (int trial = 0; trial < 100; ++trial) {
        const HarmonicCoupling g = oracle::random_coupling(3, 1.0, 0.3);
        const double phi = oracle::uniform(0.0, two_pi);
        const double fd1 = oracle::fd_derivative([&](double x) { return g.eval(x); }, phi);
        const double fd2 = oracle::fd_derivative([&](double x) { return g.eval(x, 1); }, phi);
        CHECK(std::fabs(g.eval(phi, 1) - fd1) < 1e-6);
        CHECK(std::fabs(g.eval(phi, 2) - fd2) < 1e-6);
    }
}

TEST_CASE("harmonics with equal index are merged") {
    const HarmonicCoupling g(0.0, {{1, 1.0, 0.0}, {1, 1.0, pi / 2.0}});
    CHECK(g.harmonics().size() == 1);
    // sin(x) + sin(x - pi/2) = sqrt(2) sin(x - pi/4)
    CHECK(g.eval(0.7) == doctest::Approx(std::sin(0.7) + std::sin(0.7 - pi / 2.0)).epsilon(1e-14));
    CHECK(g.max_index() == 1);
}

TEST_CASE("antiderivative: elementary primitives and the mean flag") {
    const auto [G1, m1] = antiderivative(HarmonicCoupling(0.0, {{1, -1.0, 0.0}})); // -sin -> cos - 1
    CHECK(m1 == 0.0);
    for (double phi : {0.0, 0.5, 2.0, 5.5})
        CHECK(G1.eval(phi) == doctest::Approx(std::cos(phi) - 1.0).epsilon(1e-14));

    const auto [G2, m2] = antiderivative(HarmonicCoupling::even_cosine({0.0, 1.0})); // cos -> sin
    CHECK(m2 == 0.0);
    for (double phi : {0.0, 0.5, 2.0, 5.5})
        CHECK(G2.eval(phi) == doctest::Approx(std::sin(phi)).epsilon(1e-14));

    const auto [G3, m3] = antiderivative(HarmonicCoupling::even_cosine({1.0, 1.0})); // 1 + cos
    CHECK(m3 == doctest::Approx(1.0));
    for (double phi : {0.0, 0.5, 2.0, 5.5})
        CHECK(G3.eval(phi) == doctest::Approx(std::sin(phi)).epsilon(1e-14));
}

TEST_CASE("antiderivative: G' + mean = g on a grid, G single-valued") {
    for (int trial = 0; trial < 20; ++trial) {
        const HarmonicCoupling g = oracle::random_coupling(4, 1.5, 0.8);
        const auto [G, mean] = antiderivative(g);
        CHECK(G.eval(0.0) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(std::fabs(G.eval(two_pi) - G.eval(0.0)) < 1e-13);
        for (int i = 0; i < 50; ++i) {
            const double phi = two_pi * i / 50.0;
            CHECK(std::fabs(G.eval(phi, 1) + mean - g.eval(phi)) < 1e-13);
        }
    }
}

TEST_CASE("even_odd_parts: parity, reconstruction, two-harmonic closed form") {
    const HarmonicCoupling odd_in(0.0, {{1, -1.0, 0.0}});
    const auto parts = even_odd_parts(odd_in);
    CHECK(sup_diff(parts.even_part, HarmonicCoupling()) < 1e-15);
    CHECK(sup_diff(parts.odd_part, odd_in) < 1e-15);

    // (q, r, alpha, beta) = (-1, 1, pi/2, pi/2): g_+ = cos(phi) - cos(2 phi), g_- = 0
    const TwoHarmonicParams thp{-1.0, 1.0, pi / 2.0, pi / 2.0};
    const auto tp = even_odd_parts(thp.coupling());
    const HarmonicCoupling expected_even = HarmonicCoupling::even_cosine({0.0, 1.0, -1.0});
    CHECK(sup_diff(tp.even_part, expected_even) < 1e-14);
    CHECK(sup_diff(tp.odd_part, HarmonicCoupling()) < 1e-14);

    for (int trial = 0; trial < 10; ++trial) {
        const HarmonicCoupling g = oracle::random_coupling(4, 1.5, 0.7);
        const auto p = even_odd_parts(g);
        for (int i = 0; i < 1000; ++i) {
            const double phi = two_pi * i / 1000.0;
            CHECK(std::fabs(g.eval(phi) - p.even_part.eval(phi) - p.odd_part.eval(phi)) < 1e-14);
            CHECK(std::fabs(p.even_part.eval(phi) - p.even_part.eval(-phi)) < 1e-13);
            CHECK(std::fabs(p.odd_part.eval(phi) + p.odd_part.eval(-phi)) < 1e-13);
        }
    }
}

TEST_CASE("param_symmetry: pointwise invariance / negation per kind") {
    auto sup_param_diff = [](const TwoHarmonicParams& a, const TwoHarmonicParams& b, double sign) {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const double phi = two_pi * i / 500.0;
            worst = std::max(worst, std::fabs(a.coupling().eval(phi) - sign * b.coupling().eval(phi)));
        }
        return worst;
    };

    const TwoHarmonicParams p1{1.0, 0.3, 0.2, 0.1};
    const TwoHarmonicParams f1 = param_symmetry(ParamSymmetry::flip_q, p1);
    CHECK(f1.q == doctest::Approx(-1.0));
    CHECK(f1.alpha == doctest::Approx(0.2 + pi));
    CHECK(sup_param_diff(p1, f1, 1.0) < 1e-14);

    const TwoHarmonicParams p2{-1.0, 0.5, 0.0, 0.0};
    const TwoHarmonicParams t2 = param_symmetry(ParamSymmetry::time_reversal, p2);
    CHECK(t2.alpha == doctest::Approx(pi));
    CHECK(t2.beta == doctest::Approx(pi));
    CHECK(sup_param_diff(p2, t2, -1.0) < 1e-13);

    const TwoHarmonicParams p3{-1.0, 0.7, 0.4, 1.1};
    const TwoHarmonicParams pr = param_symmetry(ParamSymmetry::phase_reversal, p3);
    // g_new(phi) = -g_old(-phi)
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double phi = two_pi * i / 500.0;
        worst = std::max(worst, std::fabs(pr.coupling().eval(phi) + p3.coupling().eval(-phi)));
    }
    CHECK(worst < 1e-13);
    const TwoHarmonicParams twice = param_symmetry(ParamSymmetry::phase_reversal, pr);
    CHECK(std::fabs(wrap_pm_pi(twice.alpha - p3.alpha)) < 1e-14);
    CHECK(std::fabs(wrap_pm_pi(twice.beta - p3.beta)) < 1e-14);

    const TwoHarmonicParams bad{1.0, 0.5, 0.0, 0.0};
    CHECK_THROWS_AS(param_symmetry(ParamSymmetry::time_reversal, bad), std::invalid_argument);
    CHECK_THROWS_AS(param_symmetry(ParamSymmetry::phase_reversal, bad), std::invalid_argument);
}

TEST_CASE("canonicalize: q = -1, r >= 0, g preserved up to the reported rescale") {
    const TwoHarmonicParams in{2.0, -0.5, 0.1, 0.2};
    const CanonicalForm cf = canonicalize(in);
    CHECK(cf.params.q == doctest::Approx(-1.0));
    CHECK(cf.time_rescale == doctest::Approx(2.0));
    CHECK(cf.params.r >= 0.0);
    CHECK(cf.params.alpha == doctest::Approx(wrap_2pi(0.1 + pi)));
    CHECK(cf.params.beta == doctest::Approx(wrap_2pi(0.2 + pi)));
    // pointwise oracle: g_in(phi) = rescale * g_canonical(phi); this pins r to
    // |r/q| = 0.25 for this input
    CHECK(cf.params.r == doctest::Approx(0.25));
    for (int i = 0; i < 500; ++i) {
        const double phi = two_pi * i / 500.0;
        CHECK(std::fabs(in.coupling().eval(phi) - cf.time_rescale * cf.params.coupling().eval(phi)) < 1e-13);
    }

    const TwoHarmonicParams already{-1.0, 0.5, 0.1, 0.2};
    const CanonicalForm cf2 = canonicalize(already);
    CHECK(cf2.params.q == doctest::Approx(-1.0));
    CHECK(cf2.params.r == doctest::Approx(0.5));
    CHECK(cf2.params.alpha == doctest::Approx(0.1));
    CHECK(cf2.params.beta == doctest::Approx(0.2));
    CHECK(cf2.time_rescale == doctest::Approx(1.0));
    CHECK(!cf2.needs_time_reversal);

    const TwoHarmonicParams neg_r{-1.0, -0.5, 0.0, 0.0};
    const CanonicalForm cf3 = canonicalize(neg_r);
    CHECK(cf3.params.r == doctest::Approx(0.5));
    CHECK(cf3.params.beta == doctest::Approx(pi));
    CHECK(cf3.needs_time_reversal); // beta = pi lands outside [0, pi)

    CHECK_THROWS_AS(canonicalize(TwoHarmonicParams{0.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}
