#pragma once

// Exhaustive grid search over the exact SNR, used as ground truth for the
// optimizing solvers, plus the fixed-location / fixed-power / fixed-height
// comparison baselines.

#include <optional>

#include "uavrelay/channel.hpp"
#include "uavrelay/fbl.hpp"
#include "uavrelay/solve_result.hpp"
#include "uavrelay/solver3d.hpp"

namespace uavrelay {

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int points = 1;

    static GridAxis with_step(double lo, double hi, double step);
    double step() const { return points > 1 ? (hi - lo) / (points - 1) : 0.0; }
    double at(int i) const { return i == points - 1 ? hi : lo + step() * i; }
};

/// Axes over x, H (3-D only) and p1, with p2 = P - p1. Each grid maximum is
/// refined by per-axis golden-section passes within one grid step.
struct GridSpec {
    GridAxis x;
    std::optional<GridAxis> H;
    GridAxis p1;
    int refine_passes = 3;

    /// 2000 x 2000 over [d1, d2] x [0, P].
    static GridSpec defaults(const FreeSpaceScenario& scn);
    /// 200^3 over [d1, d2] x [H_min, H_max] x [0, P].
    static GridSpec defaults(const Atg3dScenario& scn);
};

/// Throws ConfigError for empty or out-of-range axes.
SolveResult exhaustive_search(const FreeSpaceScenario& scn, const BlocklengthParams& blk,
                              const GridSpec& grid);
SolveResult exhaustive_search(const Atg3dScenario& scn, const GridSpec& grid);

/// x = (d1 + d2)/2, closed-form power split.
SolveResult fixed_location_baseline(const FreeSpaceScenario& scn, const BlocklengthParams& blk);
/// p1 = p2 = P/2, cubic location search.
SolveResult fixed_power_baseline(const FreeSpaceScenario& scn, const BlocklengthParams& blk);

/// x = (d1 + d2)/2; power and height optimized.
SolveResult fixed_location_baseline(const Atg3dScenario& scn);
/// p1 = p2 = P/2; height and position optimized.
SolveResult fixed_power_baseline(const Atg3dScenario& scn);
/// Height pinned (100 m unless given); power and position optimized.
SolveResult fixed_height_baseline(const Atg3dScenario& scn, double height = 100.0);

}  // namespace uavrelay
