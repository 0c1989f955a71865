#include "uavrelay/solver3d.hpp"

#include <cmath>
#include <sstream>

#include "uavrelay/errors.hpp"
#include "uavrelay/freespace.hpp"
#include "uavrelay/line_search.hpp"

namespace uavrelay {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    out.back() = hi;
    return out;
}

// Probe, then refine around the best probe sample. Falls back to a dense
// grid when the probe shows several local maxima.
template <class F>
LineSearchOutcome unimodal_search(F&& f, double lo, double hi, const LineSearchOptions& opt) {
    if (hi <= lo) {
        return {lo, f(lo), true};
    }
    const double tol = opt.rel_tol * (hi - lo);
    auto refine = [&](const std::vector<double>& grid, const std::vector<double>& values) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] > values[best]) best = i;
        }
        const double a = grid[best == 0 ? 0 : best - 1];
        const double b = grid[best + 1 == grid.size() ? best : best + 1];
        const ScalarMax r = opt.method == LineSearchMethod::GoldenSection
                                ? golden_section_max(f, a, b, tol)
                                : bisection_derivative_max(f, a, b, tol);
        return values[best] > r.value ? ScalarMax{grid[best], values[best]} : r;
    };

    const auto probe = linspace(lo, hi, opt.probe_points);
    std::vector<double> values;
    values.reserve(probe.size());
    for (double t : probe) values.push_back(f(t));

    if (count_peaks(values) <= 1) {
        const auto r = refine(probe, values);
        return {r.arg, r.value, true};
    }
    const auto dense = linspace(lo, hi, opt.fallback_points);
    std::vector<double> dense_values;
    dense_values.reserve(dense.size());
    for (double t : dense) dense_values.push_back(f(t));
    const auto r = refine(dense, dense_values);
    return {r.arg, r.value, false};
}

void check_start(const Atg3dScenario& scn, const Bcd3dStart& start) {
    if (!scn.contains(start.placement) || !(start.powers.p1 >= 0.0 && start.powers.p2 >= 0.0) ||
        start.powers.total() > scn.power_budget * (1.0 + 1e-12)) {
        std::ostringstream err;
        err << "infeasible 3-D BCD start (x=" << start.placement.x << ", H=" << start.placement.H
            << ", p1=" << start.powers.p1 << ", p2=" << start.powers.p2 << ")";
        throw BoundsError(err.str());
    }
}

std::vector<ProfilePoint> profile(double lo, double hi, double step,
                                  const auto& gamma_at) {
    if (!(step > 0.0) || hi < lo) {
        throw ConfigError("profile requires step > 0 and hi >= lo");
    }
    std::vector<ProfilePoint> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double t = lo + step * static_cast<double>(i);
        out.push_back({t, gamma_at(t)});
    }
    if (hi - out.back().coordinate > 1e-9 * std::max(1.0, std::abs(hi))) {
        out.push_back({hi, gamma_at(hi)});
    }
    return out;
}

}  // namespace

void Atg3dScenario::validate() const {
    std::ostringstream err;
    if (!(D > 0.0) || !std::isfinite(D)) err << "D must be positive; ";
    if (!(0.0 <= x_min && x_min < x_max && x_max <= D)) err << "need 0 <= x_min < x_max <= D; ";
    if (!(0.0 < H_min && H_min < H_max) || !std::isfinite(H_max)) err << "need 0 < H_min < H_max; ";
    if (!(power_budget > 0.0) || !std::isfinite(power_budget)) err << "power budget must be positive; ";
    if (!err.str().empty()) {
        throw ConfigError("invalid 3-D scenario: " + err.str());
    }
    hop1.validate();
    hop2.validate();
}

bool Atg3dScenario::contains(const Placement& p) const {
    return x_min <= p.x && p.x <= x_max && H_min <= p.H && p.H <= H_max;
}

double gamma_3d_unchecked(const Atg3dScenario& scn, const Placement& placement,
                          const PowerSplit& powers) {
    const auto g = atg_gains(scn.D, placement, scn.hop1, scn.hop2);
    return af_snr(g.h1, g.h2, powers).value();
}

Snr gamma_3d(const Atg3dScenario& scn, const Placement& placement, const PowerSplit& powers) {
    if (!scn.contains(placement)) {
        std::ostringstream err;
        err << "placement (" << placement.x << ", " << placement.H << ") outside the flying region";
        throw BoundsError(err.str());
    }
    return Snr(gamma_3d_unchecked(scn, placement, powers));
}

LineSearchOutcome optimize_height_detailed(const Atg3dScenario& scn, double x,
                                           const PowerSplit& powers,
                                           const LineSearchOptions& options) {
    return unimodal_search(
        [&](double H) { return gamma_3d_unchecked(scn, {x, H}, powers); }, scn.H_min, scn.H_max,
        options);
}

double optimize_height(const Atg3dScenario& scn, double x, const PowerSplit& powers,
                       const LineSearchOptions& options) {
    return optimize_height_detailed(scn, x, powers, options).arg;
}

LineSearchOutcome optimize_x_detailed(const Atg3dScenario& scn, double H, const PowerSplit& powers,
                                      const LineSearchOptions& options) {
    return unimodal_search(
        [&](double x) { return gamma_3d_unchecked(scn, {x, H}, powers); }, scn.x_min, scn.x_max,
        options);
}

double optimize_x(const Atg3dScenario& scn, double H, const PowerSplit& powers,
                  const LineSearchOptions& options) {
    return optimize_x_detailed(scn, H, powers, options).arg;
}

PowerSplit optimal_power_3d(const Atg3dScenario& scn, const Placement& placement) {
    const auto g = atg_gains(scn.D, placement, scn.hop1, scn.hop2);
    return optimal_power_for_gains(g.h1, g.h2, scn.power_budget);
}

Bcd3dStart default_start_3d(const Atg3dScenario& scn) {
    return {{0.5 * (scn.x_min + scn.x_max), 0.5 * (scn.H_min + scn.H_max)},
            {0.5 * scn.power_budget, 0.5 * scn.power_budget}};
}

SolveResult bcd_solve_3d(const Atg3dScenario& scn, const Bcd3dStart& start,
                         const Bcd3dOptions& options) {
    scn.validate();
    check_start(scn, start);

    Placement at = start.placement;
    PowerSplit powers = start.powers;
    double gamma = gamma_3d_unchecked(scn, at, powers);

    SolveResult result;
    result.solver_id = "bcd";
    result.trace.push_back(gamma);

    for (int cycle = 1; cycle <= options.max_cycles; ++cycle) {
        const double before = gamma;
        if (options.optimize_power) {
            const PowerSplit next = optimal_power_3d(scn, at);
            const double g = gamma_3d_unchecked(scn, at, next);
            if (g > gamma) {
                powers = next;
                gamma = g;
            }
        }
        if (options.optimize_height) {
            const auto next = optimize_height_detailed(scn, at.x, powers, options.line);
            if (next.gamma > gamma) {
                at.H = next.arg;
                gamma = next.gamma;
            }
        }
        if (options.optimize_x) {
            const auto next = optimize_x_detailed(scn, at.H, powers, options.line);
            if (next.gamma > gamma) {
                at.x = next.arg;
                gamma = next.gamma;
            }
        }
        result.trace.push_back(gamma);
        result.iterations = cycle;
        if (gamma - before <= options.rel_tol * before) break;
    }

    result.placement = at;
    result.powers = powers;
    result.snr = gamma;
    result.error_prob = decoding_error_probability(Snr(gamma), scn.blk);
    return result;
}

SolveResult bcd_solve_3d(const Atg3dScenario& scn) {
    return bcd_solve_3d(scn, default_start_3d(scn));
}

std::vector<ProfilePoint> height_profile(const Atg3dScenario& scn, double x,
                                         const PowerSplit& powers, double lo, double hi,
                                         double step) {
    return profile(lo, hi, step, [&](double H) { return gamma_3d_unchecked(scn, {x, H}, powers); });
}

std::vector<ProfilePoint> x_profile(const Atg3dScenario& scn, double H, const PowerSplit& powers,
                                    double lo, double hi, double step) {
    return profile(lo, hi, step, [&](double x) { return gamma_3d_unchecked(scn, {x, H}, powers); });
}

}  // namespace uavrelay
