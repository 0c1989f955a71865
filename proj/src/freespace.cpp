#include "uavrelay/freespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {

constexpr double kDiscriminantTol = 1e-9;

void check_start(const FreeSpaceScenario& scn, const BcdStart& start) {
    std::ostringstream err;
    if (!(scn.x_min <= start.x && start.x <= scn.x_max)) {
        err << "start x = " << start.x << " outside [" << scn.x_min << ", " << scn.x_max << "]; ";
    }
    if (!(start.powers.p1 >= 0.0 && start.powers.p2 >= 0.0)) err << "start powers must be >= 0; ";
    if (start.powers.total() > scn.power_budget * (1.0 + 1e-12)) err << "start exceeds power budget; ";
    if (!err.str().empty()) {
        throw BoundsError("infeasible BCD start: " + err.str());
    }
}

double newton_polish(const CubicCoefficients& cubic, double x) {
    for (int i = 0; i < 3; ++i) {
        const double slope = (3.0 * cubic.a * x + 2.0 * cubic.b) * x + cubic.c;
        if (slope == 0.0) break;
        const double next = x - cubic(x) / slope;
        if (!std::isfinite(next) || std::abs(cubic(next)) >= std::abs(cubic(x))) break;
        x = next;
    }
    return x;
}

void sort_and_dedup(std::vector<double>& roots, double tol) {
    std::sort(roots.begin(), roots.end());
    std::vector<double> kept;
    for (double r : roots) {
        if (kept.empty() || r - kept.back() > tol) kept.push_back(r);
    }
    roots = std::move(kept);
}

}  // namespace

double freespace_gamma(const FreeSpaceScenario& scn, double x, const PowerSplit& powers) {
    const auto g = freespace_gains_unchecked(scn, x);
    return af_snr(g.h1, g.h2, powers).value();
}

PowerSplit optimal_power_for_gains(double h1, double h2, double power_budget) {
    const double A = h1 - h2;
    if (std::abs(A) < 1e-12 * h1 || (h1 == 0.0 && h2 == 0.0)) {
        return {0.5 * power_budget, 0.5 * power_budget};
    }
    const double B = power_budget * h2 + 1.0;
    // B + A P = P h1 + 1 > 0, so the root is real for either sign of A.
    const double p1 = power_budget * B / (B + std::sqrt(B * (power_budget * h1 + 1.0)));
    return {p1, power_budget - p1};
}

PowerSplit optimal_power_given_x(const FreeSpaceScenario& scn, double x) {
    const auto g = freespace_gains(scn, x);
    return optimal_power_for_gains(g.h1, g.h2, scn.power_budget);
}

double CubicCoefficients::residual_scale(double span) const {
    return std::max({std::abs(a) * span * span * span, std::abs(b) * span * span,
                     std::abs(c) * span, std::abs(d)});
}

CubicCoefficients location_cubic(const FreeSpaceScenario& scn, const PowerSplit& powers) {
    const double D = scn.D;
    const double H2 = scn.H * scn.H;
    const double w1 = scn.beta1 * powers.p1;
    const double w2 = scn.beta2 * powers.p2;
    return {4.0, -6.0 * D, 2.0 * (D * D + 2.0 * H2 + w1 + w2), -2.0 * (D * H2 + D * w1)};
}

CubicRoots solve_depressed_cubic(double rho, double kappa, double dedup_tol) {
    CubicRoots out;
    if (rho == 0.0) {
        out.branch = CubicBranch::CubeRoot;
        out.roots = {std::cbrt(-kappa)};
        return out;
    }
    const double disc = 4.0 * rho * rho * rho + 27.0 * kappa * kappa;
    const double disc_scale = std::max(std::abs(rho * rho * rho), kappa * kappa);
    const bool disc_zero = std::abs(disc) < kDiscriminantTol * disc_scale;

    if (!disc_zero && rho > 0.0) {
        out.branch = CubicBranch::Sinh;
        const double r = std::sqrt(rho / 3.0);
        const double arg = 3.0 * kappa / (2.0 * rho) * std::sqrt(3.0 / rho);
        out.roots = {-2.0 * r * std::sinh(std::asinh(arg) / 3.0)};
        return out;
    }
    if (!disc_zero && disc > 0.0) {
        // rho < 0 here, so kappa != 0.
        out.branch = CubicBranch::Cosh;
        const double sign = kappa > 0.0 ? 1.0 : -1.0;
        const double r = std::sqrt(-rho / 3.0);
        const double arg = -3.0 * std::abs(kappa) / (2.0 * rho) * std::sqrt(-3.0 / rho);
        out.roots = {-2.0 * sign * r * std::cosh(std::acosh(std::max(arg, 1.0)) / 3.0)};
        return out;
    }
    out.branch = CubicBranch::Trigonometric;
    const double r = std::sqrt(-rho / 3.0);
    const double arg = std::clamp(3.0 * kappa / (2.0 * rho) * std::sqrt(-3.0 / rho), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
        out.roots.push_back(2.0 * r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
    }
    sort_and_dedup(out.roots, dedup_tol);
    return out;
}

CubicRoots solve_cubic(const CubicCoefficients& cubic, double dedup_tol) {
    const double a = cubic.a, b = cubic.b, c = cubic.c, d = cubic.d;
    const double rho = (3.0 * a * c - b * b) / (3.0 * a * a);
    const double kappa = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    const double shift = -b / (3.0 * a);
    CubicRoots out = solve_depressed_cubic(rho, kappa, dedup_tol);
    for (double& r : out.roots) {
        r = newton_polish(cubic, r + shift);
    }
    sort_and_dedup(out.roots, dedup_tol);
    return out;
}

CubicRoots cubic_location_candidates(const FreeSpaceScenario& scn, const PowerSplit& powers) {
    return solve_cubic(location_cubic(scn, powers), 1e-9 * scn.D);
}

double location_objective(const FreeSpaceScenario& scn, const PowerSplit& powers, double x) {
    const double H2 = scn.H * scn.H;
    const double rest = scn.D - x;
    const double D1 = H2 + x * x;
    const double D2 = H2 + rest * rest;
    return powers.p2 * scn.beta2 * D1 + powers.p1 * scn.beta1 * D2 + D1 * D2;
}

double optimal_location_given_power(const FreeSpaceScenario& scn, const PowerSplit& powers) {
    std::vector<double> candidates = {scn.x_min, scn.x_max};
    for (double r : cubic_location_candidates(scn, powers).roots) {
        if (scn.x_min <= r && r <= scn.x_max) candidates.push_back(r);
    }
    std::sort(candidates.begin(), candidates.end());
    double best_x = candidates.front();
    double best = location_objective(scn, powers, best_x);
    for (double x : candidates) {
        const double v = location_objective(scn, powers, x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    return best_x;
}

BcdStart default_start(const FreeSpaceScenario& scn) {
    return {0.5 * (scn.x_min + scn.x_max), {0.5 * scn.power_budget, 0.5 * scn.power_budget}};
}

SolveResult bcd_solve(const FreeSpaceScenario& scn, const BlocklengthParams& blk,
                      const BcdStart& start, const BcdOptions& options) {
    scn.validate();
    check_start(scn, start);

    double x = start.x;
    PowerSplit powers = start.powers;
    double gamma = freespace_gamma(scn, x, powers);

    SolveResult result;
    result.solver_id = "bcd";
    result.trace.push_back(gamma);

    for (int it = 1; it <= options.max_iterations; ++it) {
        const double before = gamma;
        if (options.optimize_power) {
            const PowerSplit next = optimal_power_given_x(scn, x);
            const double g = freespace_gamma(scn, x, next);
            if (g > gamma) {
                powers = next;
                gamma = g;
            }
        }
        if (options.optimize_location) {
            const double next = optimal_location_given_power(scn, powers);
            const double g = freespace_gamma(scn, next, powers);
            if (g > gamma) {
                x = next;
                gamma = g;
            }
        }
        result.trace.push_back(gamma);
        result.iterations = it;
        if (gamma - before <= options.rel_tol * before) break;
    }

    result.placement = {x, scn.H};
    result.powers = powers;
    result.snr = gamma;
    result.error_prob = decoding_error_probability(Snr(gamma), blk);
    return result;
}

SolveResult bcd_solve(const FreeSpaceScenario& scn, const BlocklengthParams& blk) {
    return bcd_solve(scn, blk, default_start(scn));
}

}  // namespace uavrelay
