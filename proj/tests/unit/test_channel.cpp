#include <doctest.h>

#include <cmath>
#include <random>

#include "uavrelay/channel.hpp"
#include "uavrelay/errors.hpp"
#include "uavrelay/reference_scenarios.hpp"

using namespace uavrelay;

namespace {

AtgEnvironment urban() { return make_environment("urban", 2.5e9, -93.0); }

double s_curve(double a, double b, double theta) {
    return 1.0 / (1.0 + a * std::exp(-b * (theta - a)));
}

// Mean path loss built from the LoS/NLoS mixture rather than the folded form.
double mixture_loss_db(double a, double b, double eta_los, double eta_nlos, double fc,
                       double theta, double d) {
    const double plos = s_curve(a, b, theta);
    const double fspl = 20.0 * std::log10(4.0 * M_PI * fc * d / 2.998e8);
    return plos * (fspl + eta_los) + (1.0 - plos) * (fspl + eta_nlos);
}

}  // namespace

TEST_CASE("db conversions round-trip") {
    CHECK(db_to_linear(50.0) == doctest::Approx(1e5));
    CHECK(linear_to_db(1e5) == doctest::Approx(50.0));
    CHECK(linear_to_db(db_to_linear(-93.0)) == doctest::Approx(-93.0));
}

TEST_CASE("free-space gains") {
    FreeSpaceScenario s;
    s.D = 2;
    s.H = 1;
    s.x_min = 0;
    s.x_max = 2;
    s.beta1 = s.beta2 = 1;
    s.power_budget = 1;
    auto g = freespace_gains(s, 1.0);
    CHECK(g.h1 == doctest::Approx(0.5));
    CHECK(g.h2 == doctest::Approx(0.5));
    CHECK(freespace_gains(s, 0.0).h1 == doctest::Approx(1.0));
    CHECK_THROWS_AS(freespace_gains(s, 2.5), BoundsError);

    const auto ref = reference::freespace();
    const auto r = freespace_gains(ref, 100.0);
    CHECK(r.h1 == doctest::Approx(1e5 / 24400.0).epsilon(1e-14));
    CHECK(r.h2 == doctest::Approx(std::pow(10.0, 5.9) / 24400.0).epsilon(1e-13));
    CHECK_THROWS_AS(freespace_gains(ref, 29.0), BoundsError);
}

TEST_CASE("free-space scenario validation and mirroring") {
    auto s = reference::freespace();
    CHECK_NOTHROW(s.validate());
    auto bad = s;
    bad.x_min = 180;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = s;
    bad.beta2 = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    const auto m = s.mirrored();
    CHECK(m.x_min == doctest::Approx(s.D - s.x_max));
    CHECK(m.x_max == doctest::Approx(s.D - s.x_min));
    CHECK(m.beta1 == s.beta2);
    for (double x = 30; x <= 170; x += 7) {
        const auto a = freespace_gains(s, x);
        const auto b = freespace_gains(m, s.D - x);
        CHECK(a.h1 == doctest::Approx(b.h2));
        CHECK(a.h2 == doctest::Approx(b.h1));
    }
}

TEST_CASE("elevation angles") {
    auto e = elevation_angles(20.0, {10.0, 10.0});
    CHECK(e.theta1_deg == doctest::Approx(45.0));
    CHECK(e.theta2_deg == doctest::Approx(45.0));
    CHECK(elevation_angles(200.0, {0.0, 50.0}).theta1_deg == 90.0);
    CHECK(elevation_angles(200.0, {200.0, 50.0}).theta2_deg == 90.0);
    e = elevation_angles(200.0, {100.0, 120.0});
    CHECK(e.theta1_deg == doctest::Approx(std::atan(1.2) * 180.0 / M_PI));
    CHECK(e.theta1_deg == doctest::Approx(50.194).epsilon(1e-4));
    CHECK(e.theta2_deg == doctest::Approx(e.theta1_deg));
}

TEST_CASE("los probability") {
    const auto env = urban();
    CHECK(los_probability(env, env.s_curve_a) == doctest::Approx(1.0 / (1.0 + env.s_curve_a)));
    CHECK(los_probability(env, 45.0) == doctest::Approx(s_curve(9.61, 0.16, 45.0)).epsilon(1e-14));
    CHECK_THROWS_AS(los_probability(env, -1.0), DomainError);
    CHECK_THROWS_AS(los_probability(env, 90.5), DomainError);
    double prev = 0.0;
    for (double t = 0.0; t <= 90.0; t += 0.5) {
        const double p = los_probability(env, t);
        CHECK(p > prev);
        CHECK(p < 1.0);
        prev = p;
    }
    CHECK(los_probability(env, 90.0) > 0.99);
}

TEST_CASE("mean path loss") {
    const auto env = urban();
    const double A = env.los_nlos_difference_db();
    const double C = env.reference_loss_db();
    CHECK(A == doctest::Approx(1.0 - 20.0));
    CHECK(mean_path_loss(env, env.s_curve_a, 1.0) == doctest::Approx(A / (1.0 + env.s_curve_a) + C));
    CHECK(mean_path_loss(env, 30.0, 10.0) - mean_path_loss(env, 30.0, 1.0) ==
          doctest::Approx(20.0).epsilon(1e-12));
    CHECK(mean_path_loss(env, 50.0, 156.2) ==
          doctest::Approx(mixture_loss_db(9.61, 0.16, 1.0, 20.0, 2.5e9, 50.0, 156.2)).epsilon(1e-13));
    CHECK_THROWS_AS(mean_path_loss(env, 50.0, 0.0), DomainError);
}

TEST_CASE("normalized gain is the inverse mean loss over noise") {
    for (const auto& preset : environment_presets()) {
        const auto env = make_environment(preset.name, 2.5e9, -93.0);
        const double noise = std::pow(10.0, -9.3);
        for (double t : {5.0, 30.0, 60.0, 89.0}) {
            for (double d : {1.0, 50.0, 500.0}) {
                const double via_loss = std::pow(10.0, -mean_path_loss(env, t, d) / 10.0) / noise;
                CHECK(atg_normalized_gain(env, t, d) == doctest::Approx(via_loss).epsilon(1e-12));
            }
        }
        const double plos = 1.0 / (1.0 + env.s_curve_a);
        CHECK(atg_normalized_gain(env, env.s_curve_a, 1.0) ==
              doctest::Approx(env.gain_scale() * std::pow(10.0, env.gain_exponent() * plos)));
    }
    CHECK_THROWS_AS(atg_normalized_gain(urban(), 30.0, -1.0), DomainError);
}

TEST_CASE("air-to-ground gains at the benchmark placement") {
    const auto env = make_environment("suburban", 2.5e9, -93.0);
    const auto g = atg_gains(200.0, {100.0, 120.0}, env, env);
    const double d = std::hypot(100.0, 120.0);
    const double theta = std::atan2(120.0, 100.0) * 180.0 / M_PI;
    const double expect =
        std::pow(10.0, -mixture_loss_db(4.88, 0.43, 0.1, 21.0, 2.5e9, theta, d) / 10.0) /
        std::pow(10.0, -9.3);
    CHECK(g.h1 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(g.h2 == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("presets") {
    CHECK(environment_presets().size() == 4);
    const auto hr = make_environment("high-rise", 2.5e9, -93.0);
    CHECK(hr.s_curve_a == 27.23);
    CHECK(hr.s_curve_b == 0.08);
    CHECK(hr.excess_loss_los_db == 2.3);
    CHECK(hr.excess_loss_nlos_db == 34.0);
    CHECK_THROWS_AS(make_environment("rural", 2.5e9, -93.0), ConfigError);
    // Denser environments lose more at the same geometry.
    double prev = 1e300;
    for (const auto& p : environment_presets()) {
        const double g = atg_normalized_gain(make_environment(p.name, 2.5e9, -93.0), 40.0, 150.0);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("gain decreases with distance at fixed elevation") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.0, 90.0), dist(1.0, 1000.0);
    const auto env = urban();
    for (int i = 0; i < 500; ++i) {
        const double t = th(rng);
        double d1 = dist(rng), d2 = dist(rng);
        if (d1 > d2) std::swap(d1, d2);
        CHECK(atg_normalized_gain(env, t, d1) >= atg_normalized_gain(env, t, d2));
    }
}
