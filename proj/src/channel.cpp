#include "uavrelay/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double s_curve(const AtgEnvironment& env, double theta_deg) {
    return 1.0 / (1.0 + env.s_curve_a * std::exp(-env.s_curve_b * (theta_deg - env.s_curve_a)));
}

void require_positive_distance(double d) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError("distance must be positive and finite");
    }
}

// Angle at which a UAV at height H is seen from a point at horizontal offset dx.
double elevation_deg(double H, double dx) {
    if (dx == 0.0) {
        return 90.0;
    }
    return std::atan(H / dx) * kRadToDeg;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

void FreeSpaceScenario::validate() const {
    std::ostringstream err;
    if (!(D > 0.0) || !std::isfinite(D)) err << "D must be positive; ";
    if (!(H > 0.0) || !std::isfinite(H)) err << "H must be positive; ";
    if (!(0.0 <= x_min && x_min < x_max && x_max <= D)) err << "need 0 <= x_min < x_max <= D; ";
    if (!(beta1 > 0.0) || !(beta2 > 0.0) || !std::isfinite(beta1) || !std::isfinite(beta2)) {
        err << "reference gains must be positive; ";
    }
    if (!(power_budget > 0.0) || !std::isfinite(power_budget)) err << "power budget must be positive; ";
    if (H_max > 0.0 && !(H_min <= H && H <= H_max)) err << "H outside [H_min, H_max]; ";
    if (!err.str().empty()) {
        throw ConfigError("invalid free-space scenario: " + err.str());
    }
}

FreeSpaceScenario FreeSpaceScenario::mirrored() const {
    FreeSpaceScenario m = *this;
    m.x_min = D - x_max;
    m.x_max = D - x_min;
    m.beta1 = beta2;
    m.beta2 = beta1;
    return m;
}

ChannelGains freespace_gains_unchecked(const FreeSpaceScenario& scn, double x) {
    const double H2 = scn.H * scn.H;
    const double rest = scn.D - x;
    return {scn.beta1 / (H2 + x * x), scn.beta2 / (H2 + rest * rest)};
}

ChannelGains freespace_gains(const FreeSpaceScenario& scn, double x) {
    if (!(scn.x_min <= x && x <= scn.x_max)) {
        std::ostringstream err;
        err << "x = " << x << " outside [" << scn.x_min << ", " << scn.x_max << "]";
        throw BoundsError(err.str());
    }
    return freespace_gains_unchecked(scn, x);
}

ElevationAngles elevation_angles(double D, const Placement& placement) {
    return {elevation_deg(placement.H, placement.x), elevation_deg(placement.H, D - placement.x)};
}

void AtgEnvironment::validate() const {
    std::ostringstream err;
    if (!(s_curve_a > 0.0) || !(s_curve_b > 0.0)) err << "S-curve parameters a, b must be positive; ";
    if (!(excess_loss_nlos_db >= excess_loss_los_db)) err << "need eta_NLoS >= eta_LoS; ";
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) err << "carrier must be positive; ";
    if (!std::isfinite(noise_power_db)) err << "noise power must be finite; ";
    if (!err.str().empty()) {
        throw ConfigError("invalid air-to-ground environment: " + err.str());
    }
}

double AtgEnvironment::los_nlos_difference_db() const {
    return excess_loss_los_db - excess_loss_nlos_db;
}

double AtgEnvironment::reference_loss_db() const {
    return 20.0 * std::log10(4.0 * std::numbers::pi * carrier_hz / kSpeedOfLight) +
           excess_loss_nlos_db;
}

double AtgEnvironment::gain_exponent() const { return -los_nlos_difference_db() / 10.0; }

double AtgEnvironment::noise_power_linear() const { return db_to_linear(noise_power_db); }

double AtgEnvironment::gain_scale() const {
    return std::pow(10.0, -reference_loss_db() / 10.0) / noise_power_linear();
}

const std::vector<EnvironmentPreset>& environment_presets() {
    static const std::vector<EnvironmentPreset> presets = {
        {"suburban", 4.88, 0.43, 0.1, 21.0},
        {"urban", 9.61, 0.16, 1.0, 20.0},
        {"dense-urban", 12.08, 0.11, 1.6, 23.0},
        {"high-rise", 27.23, 0.08, 2.3, 34.0},
    };
    return presets;
}

AtgEnvironment make_environment(std::string_view preset, double carrier_hz, double noise_power_db) {
    for (const auto& p : environment_presets()) {
        if (p.name == preset) {
            AtgEnvironment env{p.a, p.b, p.eta_los_db, p.eta_nlos_db, carrier_hz, noise_power_db};
            env.validate();
            return env;
        }
    }
    throw ConfigError("unknown environment preset '" + std::string(preset) + "'");
}

double los_probability(const AtgEnvironment& env, double theta_deg) {
    if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) {
        throw DomainError("elevation angle must lie in [0, 90] degrees");
    }
    return s_curve(env, theta_deg);
}

double mean_path_loss(const AtgEnvironment& env, double theta_deg, double d) {
    require_positive_distance(d);
    return env.los_nlos_difference_db() * los_probability(env, theta_deg) + 20.0 * std::log10(d) +
           env.reference_loss_db();
}

double atg_normalized_gain(const AtgEnvironment& env, double theta_deg, double d) {
    require_positive_distance(d);
    return env.gain_scale() / (d * d) *
           std::pow(10.0, env.gain_exponent() * los_probability(env, theta_deg));
}

ChannelGains atg_gains(double D, const Placement& placement, const AtgEnvironment& hop1,
                       const AtgEnvironment& hop2) {
    const auto angles = elevation_angles(D, placement);
    const double H2 = placement.H * placement.H;
    const double rest = D - placement.x;
    const double d1 = std::sqrt(H2 + placement.x * placement.x);
    const double d2 = std::sqrt(H2 + rest * rest);
    return {atg_normalized_gain(hop1, angles.theta1_deg, d1),
            atg_normalized_gain(hop2, angles.theta2_deg, d2)};
}

}  // namespace uavrelay
