#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "uavrelay/errors.hpp"
#include "uavrelay/line_search.hpp"
#include "uavrelay/oracle.hpp"
#include "uavrelay/reference_scenarios.hpp"
#include "uavrelay/solver3d.hpp"

using namespace uavrelay;

namespace {

const char* const kPresets[] = {"suburban", "urban", "dense-urban", "high-rise"};

// Builds the air-to-ground SNR from first principles: S-curve in degrees,
// free-space loss plus the LoS/NLoS excess, slant distances, -93 dBW noise.
double gamma_ref(const EnvironmentPreset& e1, const EnvironmentPreset& e2, double D, double x,
                 double H, double p1, double p2) {
    const auto gain = [&](const EnvironmentPreset& e, double horiz) {
        const double d = std::sqrt(horiz * horiz + H * H);
        const double theta = horiz == 0.0 ? 90.0 : std::atan(H / horiz) * 180.0 / M_PI;
        const double plos = 1.0 / (1.0 + e.a * std::exp(-e.b * (theta - e.a)));
        const double loss = 20.0 * std::log10(4.0 * M_PI * 2.5e9 * d / 2.998e8) +
                            plos * e.eta_los_db + (1.0 - plos) * e.eta_nlos_db;
        return std::pow(10.0, (-loss + 93.0) / 10.0);
    };
    const double h1 = gain(e1, x), h2 = gain(e2, D - x);
    return h1 * h2 * p1 * p2 / (h1 * p1 + h2 * p2 + 1.0);
}

const EnvironmentPreset& preset(const std::string& name) {
    for (const auto& p : environment_presets()) {
        if (p.name == name) return p;
    }
    throw std::runtime_error("missing preset");
}

AtgEnvironment flat_environment() {
    AtgEnvironment e = make_environment("urban", 2.5e9, -93.0);
    e.excess_loss_los_db = e.excess_loss_nlos_db = 10.0;
    return e;
}

double grid_max_height(const Atg3dScenario& s, double x, const PowerSplit& p, double step) {
    double best = 0.0;
    for (const auto& pt : height_profile(s, x, p, s.H_min, s.H_max, step)) best = std::max(best, pt.gamma);
    return best;
}

double grid_max_x(const Atg3dScenario& s, double H, const PowerSplit& p, double step) {
    double best = 0.0;
    for (const auto& pt : x_profile(s, H, p, s.x_min, s.x_max, step)) best = std::max(best, pt.gamma);
    return best;
}

}  // namespace

TEST_CASE("3-D snr") {
    const auto s = reference::atg("suburban", "suburban");
    CHECK(gamma_3d(s, {100, 120}, {0.0, 4.0}).value() == 0.0);
    CHECK_THROWS_AS(gamma_3d(s, {10, 120}, {2, 2}), BoundsError);
    CHECK_THROWS_AS(gamma_3d(s, {100, 5}, {2, 2}), BoundsError);
    const auto g = atg_gains(s.D, {100, 77}, s.hop1, s.hop2);
    CHECK(g.h1 == doctest::Approx(g.h2).epsilon(1e-15));

    for (const char* a : kPresets) {
        for (const char* b : kPresets) {
            const auto sc = reference::atg(a, b);
            CHECK(gamma_3d(sc, {100, 120}, {2, 2}).value() ==
                  doctest::Approx(gamma_ref(preset(a), preset(b), 200, 100, 120, 2, 2)).epsilon(1e-12));
            CHECK(gamma_3d(sc, {200, 50}, {1, 3}).value() ==
                  doctest::Approx(gamma_ref(preset(a), preset(b), 200, 200, 50, 1, 3)).epsilon(1e-12));
        }
    }
}

TEST_CASE("scenario validation") {
    auto s = reference::atg("urban", "urban");
    CHECK_NOTHROW(s.validate());
    s.H_min = 0.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = reference::atg("urban", "urban");
    s.x_max = 250.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("height search") {
    SUBCASE("no LoS benefit: lowest height wins") {
        auto s = reference::atg("urban", "urban");
        s.hop1 = s.hop2 = flat_environment();
        const PowerSplit p{2, 2};
        double prev = 1e300;
        for (const auto& pt : height_profile(s, 100, p, 10, 200, 1)) {
            CHECK(pt.gamma < prev);
            prev = pt.gamma;
        }
        CHECK(optimize_height(s, 100, p) == s.H_min);
    }
    SUBCASE("benchmark pairs: beats a 1 m grid") {
        for (const char* b : kPresets) {
            const auto s = reference::atg("suburban", b);
            const PowerSplit p{2, 2};
            const auto r = optimize_height_detailed(s, 100, p);
            CHECK(r.gamma >= grid_max_height(s, 100, p, 1.0) * (1 - 1e-6));
            CHECK(r.gamma == doctest::Approx(gamma_3d(s, {100, r.arg}, p).value()).epsilon(1e-15));
        }
    }
    SUBCASE("interior peak for the low-rise second hops") {
        for (const char* b : {"suburban", "urban", "dense-urban"}) {
            const auto s = reference::atg("suburban", b);
            const double H = optimize_height(s, 100, {2, 2});
            CHECK(H > s.H_min + 1);
            CHECK(H < s.H_max - 1);
        }
    }
    SUBCASE("high-rise second hop is still climbing at the ceiling") {
        const auto s = reference::atg("suburban", "high-rise");
        const auto r = optimize_height_detailed(s, 100, {2, 2});
        CHECK(r.arg == doctest::Approx(s.H_max));
        CHECK_FALSE(r.unimodal);  // a shallow low-altitude bump precedes the climb
    }
    SUBCASE("random placements against a 1 cm grid") {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<int> env(0, 3);
        std::uniform_real_distribution<double> ux(20.0, 200.0), up(0.1, 3.9);
        for (int i = 0; i < 20; ++i) {
            const auto s = reference::atg(kPresets[env(rng)], kPresets[env(rng)]);
            const double x = ux(rng), p1 = up(rng);
            const PowerSplit p{p1, 4.0 - p1};
            const auto r = optimize_height_detailed(s, x, p);
            CHECK(r.gamma >= grid_max_height(s, x, p, 0.01) * (1 - 1e-9));
        }
    }
    SUBCASE("derivative bisection agrees on unimodal profiles") {
        LineSearchOptions bis;
        bis.method = LineSearchMethod::DerivativeBisection;
        for (const char* b : {"suburban", "urban", "dense-urban"}) {
            const auto s = reference::atg("suburban", b);
            const double g = optimize_height(s, 100, {2, 2});
            const double d = optimize_height(s, 100, {2, 2}, bis);
            CHECK(d == doctest::Approx(g).epsilon(1e-5));
        }
    }
}

TEST_CASE("position search") {
    SUBCASE("identical hops: midpoint") {
        for (const char* e : {"suburban", "urban", "dense-urban"}) {
            const auto s = reference::atg(e, e);
            CHECK(optimize_x(s, 120, {2, 2}) == doctest::Approx(100.0).epsilon(1e-6));
        }
    }
    SUBCASE("identical high-rise hops: twin peaks near the endpoints") {
        // The LoS gain of a near-vertical hop outweighs the midpoint, so the
        // midpoint is a local minimum and the profile is not unimodal.
        auto s = reference::atg("high-rise", "high-rise");
        s.x_max = 180.0;
        const auto r = optimize_x_detailed(s, 120, {2, 2});
        CHECK_FALSE(r.unimodal);
        CHECK(r.arg == 20.0);
        CHECK(r.gamma == doctest::Approx(gamma_3d(s, {180, 120}, {2, 2}).value()).epsilon(1e-12));
        CHECK(gamma_3d(s, {100, 120}, {2, 2}).value() < gamma_3d(s, {99, 120}, {2, 2}).value());
        CHECK(r.gamma >= grid_max_x(s, 120, {2, 2}, 0.01) * (1 - 1e-9));
    }
    SUBCASE("lossier second hop pulls the relay toward the robot") {
        const double base = optimize_x(reference::atg("suburban", "suburban"), 120, {2, 2});
        double prev = base;
        for (const char* b : {"urban", "dense-urban", "high-rise"}) {
            const auto s = reference::atg("suburban", b);
            const double x = optimize_x(s, 120, {2, 2});
            CHECK(x > prev);
            CHECK(gamma_3d(s, {x, 120}, {2, 2}).value() >= grid_max_x(s, 120, {2, 2}, 0.01) * (1 - 1e-9));
            prev = x;
        }
    }
    SUBCASE("benchmark pairs: beats a 1 m grid") {
        for (const char* b : kPresets) {
            const auto s = reference::atg("suburban", b);
            const auto r = optimize_x_detailed(s, 120, {2, 2});
            CHECK(r.gamma >= grid_max_x(s, 120, {2, 2}, 1.0) * (1 - 1e-6));
        }
    }
}

TEST_CASE("profiles") {
    const auto s = reference::atg("urban", "urban");
    const auto one = height_profile(s, 100, {2, 2}, 50, 50, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].coordinate == 50);
    const auto odd = x_profile(s, 120, {2, 2}, 20, 25.5, 2);
    REQUIRE(odd.size() == 4);
    CHECK(odd.back().coordinate == 25.5);
    CHECK_THROWS_AS(height_profile(s, 100, {2, 2}, 10, 200, 0), ConfigError);
    CHECK_THROWS_AS(height_profile(s, 100, {2, 2}, 200, 10, 1), ConfigError);
}

TEST_CASE("3-D bcd") {
    SUBCASE("fixed-point start") {
        // Identical hops at the midpoint with the best height for P/2 each.
        const auto s = reference::atg("urban", "urban");
        const double Hc = optimize_height(s, 100, {2, 2});
        const auto f = bcd_solve_3d(s, {{100, Hc}, {2, 2}});
        CHECK(f.iterations == 1);
        CHECK(f.placement.x == doctest::Approx(100.0).epsilon(1e-6));
        CHECK(f.placement.H == doctest::Approx(Hc).epsilon(1e-9));
        CHECK(f.powers.p1 == 2.0);
    }
    SUBCASE("benchmark pairs") {
        for (const char* b : kPresets) {
            const auto s = reference::atg("suburban", b);
            const auto r = bcd_solve_3d(s);
            CHECK(r.solver_id == "bcd");
            CHECK(s.contains(r.placement));
            CHECK(r.powers.total() == doctest::Approx(s.power_budget).epsilon(1e-15));
            for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1]);
            CHECK(r.iterations <= 50);
            CHECK(r.error_prob == decoding_error_probability(Snr(r.snr), s.blk));
            const auto fixed = fixed_height_baseline(s, 100.0);
            CHECK(r.snr > fixed.snr);
        }
    }
    SUBCASE("agrees with a refined grid search") {
        for (const char* b : {"suburban", "urban", "dense-urban", "high-rise"}) {
            const auto s = reference::atg("suburban", b);
            auto grid = GridSpec::defaults(s);
            grid.x.points = grid.H->points = grid.p1.points = 80;
            const auto ex = exhaustive_search(s, grid);
            const auto r = bcd_solve_3d(s);
            CHECK(r.snr >= ex.snr * (1 - 1e-3));
        }
    }
    SUBCASE("infeasible start") {
        const auto s = reference::atg("urban", "urban");
        CHECK_THROWS_AS(bcd_solve_3d(s, {{100, 300}, {2, 2}}), BoundsError);
        CHECK_THROWS_AS(bcd_solve_3d(s, {{100, 100}, {3, 3}}), BoundsError);
    }
    SUBCASE("disabled blocks stay put") {
        const auto s = reference::atg("suburban", "urban");
        Bcd3dOptions o;
        o.optimize_height = false;
        const auto r = bcd_solve_3d(s, default_start_3d(s), o);
        CHECK(r.placement.H == default_start_3d(s).placement.H);
    }
}
