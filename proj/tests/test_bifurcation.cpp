#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "cross_oracle.hpp"
#include "phasekit/bifurcation.hpp"

using namespace phasekit;

TEST_CASE("quartic_in_p: spot value at alpha = pi/2, beta = 0, P = 1/3") {
    // proportional (factor 81) to 5184 r^4 - 1584 r^2 - 4, the discriminant of
    // the (-3)-scaled cubic t^3 + 6 r t^2 + t - 6 r
    for (double r : {0.1, 0.4, 0.7, 1.3}) {
        const double direct = 5184.0 * r * r * r * r - 1584.0 * r * r - 4.0;
        const double val = quartic_in_p_value({-1.0, r, pi / 2.0, 0.0}, 1.0 / 3.0);
        CHECK(81.0 * val == doctest::Approx(direct).epsilon(1e-10));
    }
    const double rstar =
        bisect([](double r) { return quartic_in_p_value({-1.0, r, pi / 2.0, 0.0}, 1.0 / 3.0); }, 0.1, 2.0);
    CHECK(rstar == doctest::Approx(0.5550).epsilon(2e-4));
    CHECK_THROWS_AS(quartic_in_p({1.0, 0.5, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("quartic_in_p: P = 1/2 zero set is the S2xS2 fold") {
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = oracle::uniform(0.1, pi / 2.0 - 0.1);
        const double beta = oracle::uniform(0.0, pi / 3.0);
        const double closed = std::fabs(std::cos(alpha) / (2.0 * std::cos(beta)));
        if (closed > 2.5) continue;
        auto f = [&](double r) { return quartic_in_p_value({-1.0, r, alpha, beta}, 0.5); };
        const auto roots = scan_roots(f, 0.0, 3.0, 512);
        bool hit = false;
        for (double r : roots)
            if (std::fabs(r - closed) < 1e-9) hit = true;
        CHECK(hit);
    }
}

TEST_CASE("quartic_in_p zero set vs cubic-discriminant zero set (cross-oracle)") {
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const double alpha = oracle::uniform(0.05, two_pi - 0.05);
        const double beta = oracle::uniform(0.0, two_pi);
        for (double P : {0.25, 1.0 / 3.0, 0.5}) {
            auto fq = [&](double r) { return quartic_in_p_value({-1.0, r, alpha, beta}, P); };
            auto fd = [&](double r) { return cluster_discriminant(r, alpha, beta, P); };
            for (double r : scan_roots(fq, 0.0, 3.0, 600)) {
                CHECK(cross::bracket_agrees(fd, r, 1e-12 * cross::term_scale(r, alpha, beta, P)));
                ++checked;
            }
            for (double r : scan_roots(fd, 0.0, 3.0, 600)) {
                CHECK(cross::bracket_agrees(fq, r, 1e-12 * cross::term_scale(r, alpha, beta, P)));
                ++checked;
            }
        }
    }
    CHECK(checked > 100); // the draws actually exercised sign changes
}

TEST_CASE("n3_two_cluster_discriminant: closed-form quartic and cross-oracle") {
    for (double r : {0.2, 0.5550, 1.1}) {
        const double direct = 5184.0 * r * r * r * r - 1584.0 * r * r - 4.0;
        CHECK(n3_two_cluster_discriminant(r, pi / 2.0, 0.0) == doctest::Approx(direct).epsilon(1e-12));
    }
    const double rstar = bisect([](double r) { return n3_two_cluster_discriminant(r, pi / 2.0, 0.0); }, 0.1, 2.0);
    CHECK(rstar == doctest::Approx(0.5550).epsilon(2e-4));

    for (double beta : {0.0, pi / 4.0}) {
        for (int i = 0; i < 16; ++i) {
            const double alpha = 0.05 + i * (two_pi - 0.1) / 16.0;
            auto via_display = scan_roots([&](double r) { return n3_two_cluster_discriminant(r, alpha, beta); },
                                          0.0, 3.0, 600);
            auto via_disc = scan_roots(
                [&](double r) { return cluster_discriminant(r, alpha, beta, 1.0 / 3.0); }, 0.0, 3.0, 600);
            REQUIRE(via_display.size() == via_disc.size());
            for (std::size_t k = 0; k < via_display.size(); ++k)
                CHECK(std::fabs(via_display[k] - via_disc[k]) < 1e-9);
        }
    }
}

namespace {
double curve_r_at(const BifurcationCurve& c, double alpha, double atol = 1e-9) {
    for (const auto& pt : c.points)
        if (std::fabs(pt[0] - alpha) < atol) return pt[1];
    return -1.0;
}
const BifurcationCurve& get_curve(const std::vector<BifurcationCurve>& cs, CurveKind k) {
    for (const auto& c : cs)
        if (c.kind == k) return c;
    throw std::runtime_error("curve kind missing");
}
} // namespace

TEST_CASE("analytic_curves: pinned points and defining-equation residuals") {
    const auto c3 = analytic_curves(3, 0.0, 180);
    const auto& sync = get_curve(c3, CurveKind::sync_steady);
    CHECK(curve_r_at(sync, 0.0) == doctest::Approx(0.5).epsilon(1e-12));

    const auto& sn = get_curve(c3, CurveKind::two_cluster_sn);
    CHECK(curve_r_at(sn, pi / 2.0) == doctest::Approx(0.5550).epsilon(2e-4));

    const auto c4 = analytic_curves(4, 0.0, 180);
    const auto& hopf = get_curve(c4, CurveKind::splay_hopf);
    bool vertical = !hopf.points.empty();
    for (const auto& pt : hopf.points)
        vertical = vertical && (std::fabs(pt[0] - pi / 2.0) < 1e-12 || std::fabs(pt[0] - 3.0 * pi / 2.0) < 1e-12);
    CHECK(vertical);

    // every emitted point satisfies its defining closed form
    for (const auto& curves : {c3, c4})
        for (const auto& c : curves) {
            if (c.degenerate) continue;
            for (const auto& pt : c.points) {
                const double a = pt[0], r = pt[1];
                double residual = 0.0;
                switch (c.kind) {
                case CurveKind::sync_steady: residual = std::fabs(-std::cos(a) + 2.0 * r * std::cos(c.beta)); break;
                case CurveKind::splay_hopf:
                    residual = std::fabs(
                        splay_eigenvalues(SystemParams(c.n_osc, 0.0, TwoHarmonicParams{-1.0, r, a, c.beta}.coupling()))[0]
                            .real());
                    break;
                case CurveKind::splay_block: residual = std::fabs(-2.0 * r * std::cos(c.beta)); break;
                case CurveKind::s2s2:
                    residual = std::fabs(16.0 * std::pow(std::cos(c.beta) * r, 2) - 4.0 * std::pow(std::cos(a), 2));
                    break;
                case CurveKind::two_cluster_sn:
                    residual = std::fabs(cluster_discriminant(r, a, c.beta, static_cast<double>(c.p) / c.n_osc));
                    break;
                default: break;
                }
                CHECK(residual < 1e-9);
            }
        }

    // degenerate flags at cos(beta) = 0
    const auto cdeg = analytic_curves(4, pi / 2.0, 64);
    CHECK(get_curve(cdeg, CurveKind::splay_block).degenerate);
    CHECK(get_curve(cdeg, CurveKind::s2s2).degenerate);
}

TEST_CASE("find_equilibria: Kuramoto N = 3 inventory and classification") {
    const SystemParams p(3, 0.0, HarmonicCoupling(0.0, {{1, -1.0, 0.0}}));
    const auto reps = find_equilibria(p, 48);

    for (const auto& rep : reps) {
        const auto f = reduced_field(p, rep.location);
        for (double v : f) CHECK(std::fabs(v) < 1e-10);
    }

    auto find_at = [&](double a, double b) -> const EquilibriumReport* {
        for (const auto& rep : reps)
            if (circ_dist(rep.location[0], a) < 1e-6 && circ_dist(rep.location[1], b) < 1e-6) return &rep;
        return nullptr;
    };
    const auto* sync = find_at(0.0, 0.0);
    REQUIRE(sync != nullptr);
    CHECK(sync->cls == StabilityClass::sink);
    CHECK(sync->isotropy.description == "S3");

    const auto* splay = find_at(two_pi / 3.0, 2.0 * two_pi / 3.0);
    REQUIRE(splay != nullptr);
    CHECK(splay->cls == StabilityClass::source);
    for (const auto& z : splay->eigenvalues) CHECK(z.real() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("find_equilibria: small-r inventory (sync sink, splay sources, edge saddles)") {
    const SystemParams p(3, 0.0, TwoHarmonicParams{-1.0, 0.05, 0.0, 0.0}.coupling());
    const auto reps = find_equilibria(p, 64);

    int sinks = 0, sources = 0, saddles = 0;
    for (const auto& rep : reps) {
        if (rep.cls == StabilityClass::sink) {
            ++sinks;
            CHECK(rep.isotropy.description == "S3");
        }
        if (rep.cls == StabilityClass::source) {
            ++sources;
            CHECK(rep.isotropy.description == "Z3");
        }
        if (rep.cls == StabilityClass::saddle) {
            ++saddles;
            CHECK(rep.isotropy.description == "S2"); // antiphase points on the S2 edges
        }
    }
    CHECK(sinks == 1);   // sync
    CHECK(sources == 2); // the two splay images
    CHECK(saddles == 3); // antiphase two-cluster points
    CHECK(reps.size() == 6);

    // tau-equivariance of the equilibrium set
    for (const auto& rep : reps) {
        const double p2 = rep.location[0], p3 = rep.location[1];
        const ReducedState image{wrap_2pi(p3 - p2), wrap_2pi(two_pi - p2)};
        bool present = false;
        for (const auto& other : reps)
            if (circ_dist(other.location[0], image[0]) < 1e-8 && circ_dist(other.location[1], image[1]) < 1e-8)
                present = true;
        CHECK(present);
    }
}

TEST_CASE("integrability_report: four-harmonic example vs two-harmonic example") {
    const auto bad = integrability_report(HarmonicCoupling::even_cosine({0.0, -0.5, -0.5, -0.25, 10.0}), 96);
    CHECK(bad.has_sink);
    CHECK(bad.has_source);
    CHECK(bad.sink_source_pairs);
    bool some_off_rc = false;
    for (const auto& eq : bad.equilibria)
        if ((eq.cls == StabilityClass::sink || eq.cls == StabilityClass::source) && !eq.in_rc) some_off_rc = true;
    CHECK(some_off_rc);

    // sink spectra are the negated source spectra (time reversal pairing)
    for (const auto& s : bad.equilibria) {
        if (s.cls != StabilityClass::sink) continue;
        bool paired = false;
        for (const auto& t : bad.equilibria) {
            if (t.cls != StabilityClass::source) continue;
            if (std::fabs(t.u - (two_pi - s.v)) > 1e-6 || std::fabs(t.v - (two_pi - s.u)) > 1e-6) continue;
            double worst = 1e300;
            for (int swap = 0; swap < 2; ++swap) {
                double w = 0.0;
                for (int k = 0; k < 2; ++k)
                    w = std::max(w, std::abs(s.eigenvalues[static_cast<std::size_t>(k)] +
                                             t.eigenvalues[static_cast<std::size_t>((k + swap) % 2)]));
                worst = std::min(worst, w);
            }
            if (worst < 1e-8) paired = true;
        }
        CHECK(paired);
    }

    const auto good = integrability_report(HarmonicCoupling::even_cosine({0.0, -2.0, -2.0}), 96);
    CHECK(!good.has_sink);
    CHECK(!good.has_source);
    CHECK(!good.sink_source_pairs);
    for (const auto& eq : good.equilibria) CHECK(eq.in_rc);

    CHECK_THROWS_AS(integrability_report(HarmonicCoupling(0.0, {{1, -1.0, 0.0}}), 64), std::invalid_argument);
}

TEST_CASE("make_portrait: N = 3 level sets track trajectories") {
    const SystemParams p(3, 0.0, HarmonicCoupling::even_cosine({0.0, 1.0, 1.0}));
    PortraitOptions opt;
    opt.samples = 100;
    const auto pd = make_portrait(p, {{0.3, 1.7, 4.1}, {0.0, 0.9, 2.2}}, 30.0, opt);
    CHECK(!pd.level_sets.empty());
    CHECK(pd.trajectories.size() == 2);
    for (const auto& path : pd.trajectories) {
        const double v0 = constant_of_motion_n3(p, lift(path.psi.front()));
        for (const auto& psi : path.psi)
            CHECK(std::fabs(constant_of_motion_n3(p, lift(psi)) - v0) < 1e-4);
    }
}

TEST_CASE("make_portrait: N = 4 region tags flip exactly at Q-plane crossings") {
    const SystemParams p(4, 0.0, HarmonicCoupling::even_cosine({0.0, -0.5, -0.5, -0.25, 10.0}));
    PortraitOptions opt;
    opt.samples = 400;
    opt.find_grid = 16;
    const auto pd = make_portrait(p, {{0.1, 1.2, 2.9, 4.6}}, 5.0, opt);
    REQUIRE(pd.trajectories.size() == 1);
    const auto& path = pd.trajectories[0];
    int flips = 0;
    for (std::size_t i = 1; i < path.psi.size(); ++i) {
        auto side = [](const ReducedState& psi) {
            const double h41 = wrap_pm_pi(psi[2] + psi[1] - psi[0]);
            const double h43 = wrap_pm_pi(psi[2] - psi[1] - psi[0]);
            return std::make_pair(h41 > 0.0, h43 > 0.0);
        };
        const bool tag_change = path.region[i] != path.region[i - 1];
        const bool side_change = side(path.psi[i]) != side(path.psi[i - 1]);
        CHECK(tag_change == side_change);
        if (tag_change) ++flips;
    }
    CHECK(flips > 0); // this seed does cross Q41 / Q43

    // empty seeds: equilibria and overlays only
    const auto empty = make_portrait(p, {}, 1.0, opt);
    CHECK(empty.trajectories.empty());
    CHECK(empty.q_overlays.size() == 4);
    for (const auto& ov : empty.q_overlays) CHECK(!ov.empty());
}
