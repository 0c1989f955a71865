#pragma once

// Channel gain models for the controller -> UAV -> robot geometry. The
// controller sits at (0, 0), the robot at (D, 0) and the UAV hovers at (x, H).
//
// Free-space: h_i = beta_i / d_i^2 with noise-normalized reference gains.
// Air-to-ground: elevation-dependent LoS probability (logistic S-curve in
// degrees) blended into the mean path loss, then normalized by noise power.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uavrelay {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s

double db_to_linear(double db);
double linear_to_db(double linear);

struct Placement {
    double x = 0.0;  // horizontal distance from the controller (m)
    double H = 0.0;  // height (m)
};

struct ChannelGains {
    double h1 = 0.0;
    double h2 = 0.0;
};

/// Fixed-height free-space geometry. Reference gains are linear and already
/// divided by the noise power.
struct FreeSpaceScenario {
    double D = 0.0;      // controller-robot distance (m)
    double H = 0.0;      // UAV height (m)
    double x_min = 0.0;  // d1
    double x_max = 0.0;  // d2
    double beta1 = 0.0;
    double beta2 = 0.0;
    double power_budget = 0.0;  // P_T (W)
    double H_min = 0.0;  // only checked when H_max > 0
    double H_max = 0.0;

    /// Throws ConfigError when the invariants do not hold.
    void validate() const;

    /// Reflection x -> D - x with the hop roles swapped.
    FreeSpaceScenario mirrored() const;
};

/// h1 = beta1 / (H^2 + x^2), h2 = beta2 / (H^2 + (D - x)^2).
/// Throws BoundsError when x lies outside [x_min, x_max].
ChannelGains freespace_gains(const FreeSpaceScenario& scn, double x);

/// Same formula without the feasibility check; used by grid evaluators.
ChannelGains freespace_gains_unchecked(const FreeSpaceScenario& scn, double x);

struct ElevationAngles {
    double theta1_deg = 0.0;
    double theta2_deg = 0.0;
};

/// Elevation of the UAV seen from the controller and from the robot, in degrees.
ElevationAngles elevation_angles(double D, const Placement& placement);

/// Per-hop air-to-ground propagation parameters.
struct AtgEnvironment {
    double s_curve_a = 0.0;
    double s_curve_b = 0.0;
    double excess_loss_los_db = 0.0;
    double excess_loss_nlos_db = 0.0;
    double carrier_hz = 0.0;
    double noise_power_db = 0.0;

    void validate() const;

    double los_nlos_difference_db() const;  // A = eta_LoS - eta_NLoS
    double reference_loss_db() const;       // C = 20 log10(4 pi f_c / c) + eta_NLoS
    double gain_exponent() const;           // -A / 10
    double gain_scale() const;              // 10^(-C/10) / noise (linear)
    double noise_power_linear() const;
};

struct EnvironmentPreset {
    std::string_view name;
    double a;
    double b;
    double eta_los_db;
    double eta_nlos_db;
};

/// suburban, urban, dense-urban, high-rise.
const std::vector<EnvironmentPreset>& environment_presets();

/// Builds an environment from a named preset. Throws ConfigError on unknown names.
AtgEnvironment make_environment(std::string_view preset, double carrier_hz,
                                double noise_power_db);

/// 1 / (1 + a exp(-b (theta - a))), theta in degrees within [0, 90].
double los_probability(const AtgEnvironment& env, double theta_deg);

/// Mean path loss in dB at elevation theta (degrees) and distance d (m).
double mean_path_loss(const AtgEnvironment& env, double theta_deg, double d);

/// Noise-normalized linear gain C~ d^-2 10^(A~ P_LoS(theta)).
double atg_normalized_gain(const AtgEnvironment& env, double theta_deg, double d);

/// Gains of both hops at a placement, using slant distances.
ChannelGains atg_gains(double D, const Placement& placement, const AtgEnvironment& hop1,
                       const AtgEnvironment& hop2);

}  // namespace uavrelay
