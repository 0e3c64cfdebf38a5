#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "phasekit/cir.hpp"
#include "phasekit/integrate.hpp"
#include "phasekit/system.hpp"

using namespace phasekit;

namespace {
const HarmonicCoupling minus_sin(0.0, {{1, -1.0, 0.0}});

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}
} // namespace

TEST_CASE("vector_field: sync and splay shortcuts") {
    for (int n : {2, 3, 5}) {
        const SystemParams p(n, 0.3, oracle::random_coupling(3, 1.0, 0.4));
        const PhaseState sync(static_cast<std::size_t>(n), 1.234);
        for (double fk : vector_field(p, sync))
            CHECK(fk == doctest::Approx(0.3 + p.g.eval(0.0)).epsilon(1e-14));
    }
    const SystemParams p3(3, 0.7, minus_sin);
    for (double fk : vector_field(p3, splay_state(3))) CHECK(fk == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("vector_field matches the double-loop oracle") {
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 4;
        const SystemParams p(n, oracle::uniform(-1.0, 1.0), oracle::random_coupling(3, 1.5, 0.5));
        const PhaseState th = oracle::random_phases(n);
        const auto f = vector_field(p, th);
        const auto fb = oracle::brute_field(p, th);
        for (int k = 0; k < n; ++k) CHECK(std::fabs(f[k] - fb[k]) < 1e-14);
    }
}

TEST_CASE("reduced_field: relative equilibria, omega independence, lift independence") {
    const SystemParams p(3, 0.0, minus_sin);
    CHECK(max_abs(reduced_field(p, {two_pi / 3.0, 2.0 * two_pi / 3.0})) < 1e-14);

    for (int trial = 0; trial < 20; ++trial) {
        const HarmonicCoupling g = oracle::random_coupling(3, 1.2, 0.3);
        const int n = 3 + trial % 2;
        const ReducedState psi = oracle::random_phases(n - 1);
        const SystemParams p0(n, 0.0, g), p5(n, 5.0, g);
        const auto f0 = reduced_field(p0, psi), f5 = reduced_field(p5, psi);
        for (std::size_t k = 0; k < psi.size(); ++k) CHECK(std::fabs(f0[k] - f5[k]) < 1e-13);

        // differences of the full field agree for two different lifts
        const double shift = oracle::uniform(0.0, two_pi);
        PhaseState lifted = lift(psi);
        for (double& x : lifted) x += shift;
        const auto full = vector_field(p0, lifted);
        for (std::size_t k = 0; k < psi.size(); ++k)
            CHECK(std::fabs(f0[k] - (full[k + 1] - full[0])) < 1e-14);
    }
}

TEST_CASE("jacobian: row sums vanish, finite differences agree, splay spectrum") {
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const SystemParams p(n, 0.0, oracle::random_coupling(3, 1.2, 0.4));
        const PhaseState th = oracle::random_phases(n);
        const Matrix j = jacobian(p, th);
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int c = 0; c < n; ++c) row += j(i, c);
            CHECK(std::fabs(row) < 1e-14);
        }
        const Matrix fd = oracle::fd_jacobian(p, th);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) CHECK(std::fabs(j(i, c) - fd(i, c)) < 1e-6);
    }

    const SystemParams p3(3, 0.0, minus_sin);
    auto eigs = eigenvalues(reduced_jacobian(p3, {two_pi / 3.0, 2.0 * two_pi / 3.0}));
    std::vector<double> re;
    for (auto z : eigs) {
        CHECK(std::fabs(z.imag()) < 1e-12);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(re[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("divergence: even coupling is divergence free; trace identity") {
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams p(4, 0.0, oracle::random_even_coupling(3));
        const PhaseState th = oracle::random_phases(4);
        CHECK(std::fabs(divergence(p, th)) < 1e-13);
    }

    const SystemParams podd(3, 0.0, minus_sin);
    const PhaseState th{0.0, pi / 2.0, pi};
    const double div = divergence(podd, th);
    CHECK(div == doctest::Approx(oracle::brute_divergence(podd, th)).epsilon(1e-14));
    CHECK(std::fabs(div) > 0.1); // odd coupling: generically nonzero

    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 3;
        const SystemParams p(n, 0.0, oracle::random_coupling(3, 1.1, 0.2));
        const PhaseState any = oracle::random_phases(n);
        CHECK(divergence(p, any) == doctest::Approx(trace(jacobian(p, any))).epsilon(1e-13));
        const PhaseState sync(static_cast<std::size_t>(n), 0.77);
        CHECK(divergence(p, sync) == doctest::Approx((n - 1) * p.g.eval(0.0, 1)).epsilon(1e-13));
    }
}

TEST_CASE("translation and permutation equivariance") {
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 2;
        const SystemParams p(n, 0.4, oracle::random_coupling(3, 1.0, 0.3));
        const PhaseState th = oracle::random_phases(n);
        const auto f = vector_field(p, th);

        PhaseState shifted = th;
        const double s = oracle::uniform(-5.0, 5.0);
        for (double& x : shifted) x += s;
        const auto fs = vector_field(p, shifted);
        for (int k = 0; k < n; ++k) CHECK(std::fabs(f[k] - fs[k]) < 1e-13);

        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), oracle::rng());
        PhaseState permuted(th.size());
        for (int k = 0; k < n; ++k) permuted[k] = th[perm[k]];
        const auto fp = vector_field(p, permuted);
        for (int k = 0; k < n; ++k) CHECK(std::fabs(fp[k] - f[perm[k]]) < 1e-13);
    }
}

TEST_CASE("integrate: sync rotates at omega + g(0)") {
    const SystemParams p(3, 0.9, TwoHarmonicParams{-1.0, 0.4, 0.3, 0.2}.coupling());
    const double T = 10.0;
    IntegrateOptions opt;
    opt.sample_times = {T};
    const Trajectory tr = integrate(p, {0.5, 0.5, 0.5}, T, opt);
    REQUIRE(tr.states.size() == 1);
    const double expected = wrap_2pi(0.5 + (0.9 + p.g.eval(0.0)) * T);
    for (double th : tr.states.back()) CHECK(circ_dist(wrap_2pi(th), expected) < 1e-8);
}

TEST_CASE("integrate: splay keeps its phase differences") {
    const SystemParams p(3, 0.0, TwoHarmonicParams{-1.0, 0.7, 1.1, 0.4}.coupling());
    IntegrateOptions opt;
    opt.sample_times = linspace_times(10.0, 11);
    const Trajectory tr = integrate(p, splay_state(3), 10.0, opt);
    for (const auto& st : tr.states) {
        CHECK(circ_dist(st[1] - st[0], two_pi / 3.0) < 1e-8);
        CHECK(circ_dist(st[2] - st[0], 2.0 * two_pi / 3.0) < 1e-8);
    }
}

TEST_CASE("integrate: reversibility identity for even coupling, omega = 0") {
    const SystemParams p(4, 0.0, HarmonicCoupling::even_cosine({0.0, 1.0, -0.6, 0.3}));
    const PhaseState th0{0.4, 1.3, 2.9, 5.1};
    PhaseState neg(th0.size());
    for (std::size_t k = 0; k < th0.size(); ++k) neg[k] = -th0[k];

    const double T = 20.0;
    IntegrateOptions opt;
    opt.sample_times = {T};
    const Trajectory fwd = integrate(p, neg, T, opt);
    IntegrateOptions optb;
    optb.sample_times = {-T};
    const Trajectory bwd = integrate(p, th0, -T, optb);
    for (std::size_t k = 0; k < th0.size(); ++k)
        CHECK(circ_dist(fwd.states.back()[k], -bwd.states.back()[k]) < 1e-6);
}

TEST_CASE("integrate: argument validation and diagnostics") {
    const SystemParams p(2, 0.0, minus_sin);
    CHECK_THROWS_AS(integrate(p, {0.0, 1.0}, 0.0), std::invalid_argument);
    IntegrateOptions bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate(p, {0.0, 1.0}, 1.0, bad), std::invalid_argument);

    const Trajectory tr = integrate(p, {0.0, 1.0}, 5.0);
    CHECK(tr.accepted > 0);
    CHECK(tr.times.size() == tr.states.size());
    CHECK(std::is_sorted(tr.times.begin(), tr.times.end()));
    CHECK(tr.max_error_estimate <= 1.0);
}

TEST_CASE("potential: direct value, gradient identity, shift invariance") {
    const SystemParams p2(2, 0.0, minus_sin);
    CHECK(potential(p2, {0.0, pi / 2.0}) == doctest::Approx(0.5).epsilon(1e-14));

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Harmonic> hs;
        for (int j = 1; j <= 3; ++j) hs.push_back({j, oracle::uniform(-1.0, 1.0), 0.0}); // odd: zero phases
        const SystemParams p(3, 0.8, HarmonicCoupling(0.0, hs));
        const PhaseState th = oracle::random_phases(3);
        const auto f = vector_field(p, th);
        for (int k = 0; k < 3; ++k) {
            auto vk = [&](double x) {
                PhaseState t = th;
                t[static_cast<std::size_t>(k)] = x;
                return potential(p, t);
            };
            const double grad = oracle::fd_derivative(vk, th[static_cast<std::size_t>(k)]);
            CHECK(std::fabs(f[static_cast<std::size_t>(k)] - (p.omega - grad)) < 1e-6);
        }
        PhaseState shifted = th;
        for (double& x : shifted) x += 1.7;
        CHECK(std::fabs(potential(p, th) - potential(p, shifted)) < 1e-13);
    }

    const SystemParams bad(3, 0.0, HarmonicCoupling::even_cosine({0.0, 1.0}));
    CHECK_THROWS_AS(potential(bad, {0.0, 1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("odd coupling: V non-increasing along trajectories with omega = 0") {
    std::vector<Harmonic> hs{{1, -1.0, 0.0}, {2, 0.6, 0.0}};
    const SystemParams p(3, 0.0, HarmonicCoupling(0.0, hs));
    IntegrateOptions opt;
    opt.sample_times = linspace_times(20.0, 200);
    const Trajectory tr = integrate(p, {0.3, 2.0, 4.4}, 20.0, opt);
    double prev = potential(p, tr.states.front());
    for (std::size_t i = 1; i < tr.states.size(); ++i) {
        const double v = potential(p, tr.states[i]);
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
}
