#pragma once

// Globally optimal solver for the free-space problem under the high-SNR
// approximation gamma~ = h1 h2 p1 p2 / (h2 p2 + h1 p1), i.e. the AF SNR with
// the +1 dropped from the denominator.
//
// For fixed powers gamma~ is maximized at x0 = D beta1 p1 / (beta1 p1 + beta2 p2),
// clamped to [d1, d2]. The power domain splits into three conditions by where
// x0 falls:
//   I   d1 <= x0 <= d2  convex problem in (p1, p2), x = x0
//   II  x0 < d1         concave ratio in p1 on [0, p1_up], x = d1
//   III x0 > d2         concave ratio in p1 on [p1_low, P], x = d2
// and the best of the three is the global optimum of gamma~.

#include <array>

#include "uavrelay/channel.hpp"
#include "uavrelay/fbl.hpp"
#include "uavrelay/solve_result.hpp"

namespace uavrelay {

enum class HighSnrCondition { Interior, LowerBoundary, UpperBoundary };

/// Equal: beta1 == beta2 (condition I) or beta1 D2 == beta2 D1 (II, III).
enum class HighSnrCase { Equal, Unequal };

const char* to_string(HighSnrCondition c);
const char* to_string(HighSnrCase c);

struct HighSnrCaseReport {
    HighSnrCondition condition = HighSnrCondition::Interior;
    HighSnrCase case_tag = HighSnrCase::Equal;
    bool feasible = false;
    double x = 0.0;
    PowerSplit powers;
    double gamma_tilde = 0.0;
    double gamma_exact = 0.0;
};

/// beta1 beta2 p1 p2 / (beta2 p2 (H^2 + x^2) + beta1 p1 (H^2 + (D - x)^2)).
double gamma_tilde(const FreeSpaceScenario& scn, double x, const PowerSplit& powers);

struct UnconstrainedLocation {
    double x0 = 0.0;
    double clamped = 0.0;
};

UnconstrainedLocation unconstrained_location(const PowerSplit& powers, const FreeSpaceScenario& scn);

/// Source power at which x0 equals the given position when p1 + p2 = P:
/// d beta2 P / ((D - d) beta1 + d beta2). x0 is increasing in p1.
double power_threshold_for_location(const FreeSpaceScenario& scn, double position);

/// Argmax over p in [0, P] of p (P - p) / (slope p + offset), assuming the
/// denominator is positive on [0, P]. Cancellation-free root of
/// slope p^2 + 2 offset p - P offset = 0.
double ratio_peak(double slope, double offset, double power_budget);

/// Condition-I objective H^2 (b1 p1 + b2 p2)/(p1 p2) + b1 b2 D^2/(b1 p1 + b2 p2),
/// equal to beta1 beta2 / gamma~(x0).
double interior_objective(const FreeSpaceScenario& scn, const PowerSplit& powers);

struct Hessian2 {
    double h11 = 0.0;
    double h12 = 0.0;
    double h22 = 0.0;

    double determinant() const { return h11 * h22 - h12 * h12; }
};

/// Closed-form Hessian of interior_objective in (p1, p2).
Hessian2 interior_hessian(const FreeSpaceScenario& scn, const PowerSplit& powers);

/// gamma~ with x pinned at a boundary and p2 = P - p1.
double boundary_gamma_tilde(const FreeSpaceScenario& scn, double x_fixed, double p1);

HighSnrCaseReport solve_condition1(const FreeSpaceScenario& scn);
HighSnrCaseReport solve_condition2(const FreeSpaceScenario& scn);
HighSnrCaseReport solve_condition3(const FreeSpaceScenario& scn);

std::array<HighSnrCaseReport, 3> high_snr_reports(const FreeSpaceScenario& scn);

/// Best feasible condition by gamma~, re-scored with the exact SNR.
SolveResult high_snr_solve(const FreeSpaceScenario& scn, const BlocklengthParams& blk);

}  // namespace uavrelay
