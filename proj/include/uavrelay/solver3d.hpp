#pragma once

// Block coordinate ascent for the air-to-ground channel: closed-form power
// split, then height, then horizontal position. The height and position
// profiles are assumed unimodal; each line search probes the profile first
// and falls back to a dense grid when more than one peak shows up.

#include <vector>

#include "uavrelay/channel.hpp"
#include "uavrelay/fbl.hpp"
#include "uavrelay/solve_result.hpp"

namespace uavrelay {

struct Atg3dScenario {
    double D = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    double H_min = 0.0;
    double H_max = 0.0;
    AtgEnvironment hop1;
    AtgEnvironment hop2;
    double power_budget = 0.0;
    BlocklengthParams blk{100, 80};

    void validate() const;
    bool contains(const Placement& p) const;
};

/// Exact AF SNR at a placement. Throws BoundsError outside the flying region.
Snr gamma_3d(const Atg3dScenario& scn, const Placement& placement, const PowerSplit& powers);

/// Same without the region check.
double gamma_3d_unchecked(const Atg3dScenario& scn, const Placement& placement,
                          const PowerSplit& powers);

enum class LineSearchMethod { GoldenSection, DerivativeBisection };

struct LineSearchOptions {
    LineSearchMethod method = LineSearchMethod::GoldenSection;
    double rel_tol = 1e-8;    // final bracket width relative to the search range
    int probe_points = 17;    // unimodality probe
    int fallback_points = 1001;
};

struct LineSearchOutcome {
    double arg = 0.0;
    double gamma = 0.0;
    bool unimodal = true;  // false when the probe found several peaks
};

LineSearchOutcome optimize_height_detailed(const Atg3dScenario& scn, double x,
                                           const PowerSplit& powers,
                                           const LineSearchOptions& options = {});
double optimize_height(const Atg3dScenario& scn, double x, const PowerSplit& powers,
                       const LineSearchOptions& options = {});

LineSearchOutcome optimize_x_detailed(const Atg3dScenario& scn, double H, const PowerSplit& powers,
                                      const LineSearchOptions& options = {});
double optimize_x(const Atg3dScenario& scn, double H, const PowerSplit& powers,
                  const LineSearchOptions& options = {});

/// Power split at a placement via the same closed form as the free-space model.
PowerSplit optimal_power_3d(const Atg3dScenario& scn, const Placement& placement);

struct Bcd3dStart {
    Placement placement;
    PowerSplit powers;
};

/// x = (d1 + d2)/2, H = (H_min + H_max)/2, p1 = p2 = P/2.
Bcd3dStart default_start_3d(const Atg3dScenario& scn);

struct Bcd3dOptions {
    bool optimize_power = true;
    bool optimize_height = true;
    bool optimize_x = true;
    double rel_tol = 1e-9;
    int max_cycles = 50;
    LineSearchOptions line{};
};

/// Power -> height -> position cycles; updates are kept only on strict
/// improvement. Throws BoundsError for an infeasible start.
SolveResult bcd_solve_3d(const Atg3dScenario& scn, const Bcd3dStart& start,
                         const Bcd3dOptions& options = {});
SolveResult bcd_solve_3d(const Atg3dScenario& scn);

struct ProfilePoint {
    double coordinate = 0.0;
    double gamma = 0.0;
};

/// gamma(H) on [lo, hi] with the given step at fixed x and powers. The last
/// sample is hi when the step does not divide the range.
std::vector<ProfilePoint> height_profile(const Atg3dScenario& scn, double x,
                                         const PowerSplit& powers, double lo, double hi,
                                         double step);

/// gamma(x) on [lo, hi] with the given step at fixed H and powers.
std::vector<ProfilePoint> x_profile(const Atg3dScenario& scn, double H, const PowerSplit& powers,
                                    double lo, double hi, double step);

}  // namespace uavrelay
