#pragma once

// General-case solver for the fixed-height free-space problem: block
// coordinate ascent alternating a closed-form power split with a global
// one-dimensional location search over the stationary points of a cubic.

#include <vector>

#include "uavrelay/channel.hpp"
#include "uavrelay/fbl.hpp"
#include "uavrelay/solve_result.hpp"

namespace uavrelay {

/// Exact AF SNR at horizontal position x for the scenario's fixed height.
double freespace_gamma(const FreeSpaceScenario& scn, double x, const PowerSplit& powers);

/// Maximizer of h1 h2 p1 (P - p1) / ((h1 - h2) p1 + P h2 + 1) over p1 in [0, P].
/// Uses the cancellation-free form P B / (B + sqrt(B (B + A P))); returns P/2
/// exactly when |h1 - h2| < 1e-12 h1.
PowerSplit optimal_power_for_gains(double h1, double h2, double power_budget);

/// Power split maximizing gamma at fixed x, spending the full budget.
PowerSplit optimal_power_given_x(const FreeSpaceScenario& scn, double x);

/// Coefficients of a x^3 + b x^2 + c x + d = 0 whose roots are the stationary
/// points of location_objective.
struct CubicCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    double operator()(double x) const { return ((a * x + b) * x + c) * x + d; }
    /// Magnitude used to scale residuals: max |coef| x^k over the search span.
    double residual_scale(double span) const;
};

CubicCoefficients location_cubic(const FreeSpaceScenario& scn, const PowerSplit& powers);

enum class CubicBranch {
    Cosh,           // rho < 0, discriminant > 0: one real root
    Sinh,           // rho > 0: one real root
    CubeRoot,       // rho == 0
    Trigonometric,  // three real roots (possibly coincident)
};

struct CubicRoots {
    std::vector<double> roots;  // ascending
    CubicBranch branch = CubicBranch::Trigonometric;
};

/// Real roots of t^3 + rho t + kappa = 0 through the hyperbolic and
/// trigonometric closed forms. Roots closer than dedup_tol are merged.
CubicRoots solve_depressed_cubic(double rho, double kappa, double dedup_tol);

/// Real roots of a general cubic (a != 0) via the depressed form.
CubicRoots solve_cubic(const CubicCoefficients& cubic, double dedup_tol);

/// All real stationary points of location_objective (not filtered to [d1, d2]).
CubicRoots cubic_location_candidates(const FreeSpaceScenario& scn, const PowerSplit& powers);

/// p2 beta2 D1(x) + p1 beta1 D2(x) + D1(x) D2(x); minimizing it maximizes gamma.
double location_objective(const FreeSpaceScenario& scn, const PowerSplit& powers, double x);

/// Global minimizer of location_objective over [d1, d2] among the endpoints
/// and in-range cubic roots. Ties go to the smallest x.
double optimal_location_given_power(const FreeSpaceScenario& scn, const PowerSplit& powers);

struct BcdStart {
    double x = 0.0;
    PowerSplit powers;
};

/// x = (d1 + d2)/2, p1 = p2 = P/2.
BcdStart default_start(const FreeSpaceScenario& scn);

struct BcdOptions {
    bool optimize_power = true;
    bool optimize_location = true;
    double rel_tol = 1e-9;
    int max_iterations = 50;
};

/// Alternates power and location updates. A block update is kept only if it
/// strictly increases gamma, so the trace is nondecreasing. Throws
/// BoundsError for an infeasible start.
SolveResult bcd_solve(const FreeSpaceScenario& scn, const BlocklengthParams& blk,
                      const BcdStart& start, const BcdOptions& options = {});

SolveResult bcd_solve(const FreeSpaceScenario& scn, const BlocklengthParams& blk);

}  // namespace uavrelay
