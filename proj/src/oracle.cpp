#include "uavrelay/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>
#include <thread>
#include <vector>

#include "uavrelay/errors.hpp"
#include "uavrelay/freespace.hpp"
#include "uavrelay/line_search.hpp"

namespace uavrelay {

namespace {

struct Best {
    double value = -1.0;
    long index = -1;  // flat grid index; ties go to the smallest
};

Best better(const Best& a, const Best& b) {
    if (a.index < 0) return b;
    if (b.index < 0) return a;
    if (b.value > a.value || (b.value == a.value && b.index < a.index)) return b;
    return a;
}

// Evaluates eval(outer) for outer in [0, n) across worker threads and
// reduces deterministically.
Best parallel_best(int n, const std::function<Best(int)>& eval) {
    const int workers =
        std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(1, n));
    std::vector<std::future<Best>> parts;
    for (int w = 0; w < workers; ++w) {
        parts.push_back(std::async(std::launch::async, [&, w] {
            Best local;
            for (int i = w; i < n; i += workers) local = better(local, eval(i));
            return local;
        }));
    }
    Best out;
    for (auto& p : parts) out = better(out, p.get());
    return out;
}

void check_axis(const GridAxis& axis, double lo, double hi, const char* name) {
    std::ostringstream err;
    if (axis.points < 1) {
        err << name << " axis is empty";
    } else if (!(axis.lo <= axis.hi) || axis.lo < lo - 1e-12 * std::abs(lo) ||
               axis.hi > hi + 1e-12 * std::abs(hi)) {
        err << name << " axis [" << axis.lo << ", " << axis.hi << "] outside [" << lo << ", " << hi
            << "]";
    }
    if (!err.str().empty()) throw ConfigError("invalid grid: " + err.str());
}

struct RefineAxis {
    double* value;
    double lo;
    double hi;
    double step;
};

// Per-axis golden refinement within one grid step of the current point.
int refine(std::vector<RefineAxis> axes, const std::function<double()>& objective, int passes,
           double& best, std::vector<double>& trace) {
    int done = 0;
    for (int pass = 0; pass < passes; ++pass) {
        const double start = best;
        for (auto& ax : axes) {
            if (ax.step <= 0.0) continue;
            const double keep = *ax.value;
            const double a = std::max(ax.lo, keep - ax.step);
            const double b = std::min(ax.hi, keep + ax.step);
            const auto r = golden_section_max(
                [&](double t) {
                    *ax.value = t;
                    return objective();
                },
                a, b, 1e-10 * ax.step);
            if (r.value > best) {
                best = r.value;
                *ax.value = r.arg;
            } else {
                *ax.value = keep;
            }
        }
        ++done;
        trace.push_back(best);
        if (best - start <= 1e-15 * start) break;
    }
    return done;
}

SolveResult bcd_3d_variant(const Atg3dScenario& scn, Bcd3dStart start, const Bcd3dOptions& opt,
                           const char* id) {
    auto r = bcd_solve_3d(scn, start, opt);
    r.solver_id = id;
    return r;
}

}  // namespace

GridAxis GridAxis::with_step(double lo, double hi, double step) {
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    const double n = std::floor((hi - lo) / step + 1e-9) + 1.0;
    if (!(n >= 1.0) || n > 1e8) throw ConfigError("grid step gives an invalid point count");
    return {lo, lo + step * (n - 1.0), static_cast<int>(n)};
}

GridSpec GridSpec::defaults(const FreeSpaceScenario& scn) {
    return {{scn.x_min, scn.x_max, 2000}, std::nullopt, {0.0, scn.power_budget, 2000}};
}

GridSpec GridSpec::defaults(const Atg3dScenario& scn) {
    return {{scn.x_min, scn.x_max, 200},
            GridAxis{scn.H_min, scn.H_max, 200},
            {0.0, scn.power_budget, 200}};
}

SolveResult exhaustive_search(const FreeSpaceScenario& scn, const BlocklengthParams& blk,
                              const GridSpec& grid) {
    scn.validate();
    check_axis(grid.x, scn.x_min, scn.x_max, "x");
    check_axis(grid.p1, 0.0, scn.power_budget, "p1");
    const double P = scn.power_budget;
    const int np = grid.p1.points;

    const Best best = parallel_best(grid.x.points, [&](int i) {
        const auto g = freespace_gains_unchecked(scn, grid.x.at(i));
        Best local;
        for (int j = 0; j < np; ++j) {
            const double p1 = grid.p1.at(j);
            const double v = af_snr(g.h1, g.h2, {p1, P - p1}).value();
            local = better(local, {v, static_cast<long>(i) * np + j});
        }
        return local;
    });

    double x = grid.x.at(static_cast<int>(best.index / np));
    double p1 = grid.p1.at(static_cast<int>(best.index % np));
    double gamma = best.value;

    SolveResult result;
    result.solver_id = "exhaustive";
    result.trace.push_back(gamma);
    result.iterations = refine(
        {{&x, grid.x.lo, grid.x.hi, grid.x.step()}, {&p1, grid.p1.lo, grid.p1.hi, grid.p1.step()}},
        [&] { return freespace_gamma(scn, x, {p1, P - p1}); }, grid.refine_passes, gamma,
        result.trace);

    result.placement = {x, scn.H};
    result.powers = {p1, P - p1};
    result.snr = gamma;
    result.error_prob = decoding_error_probability(Snr(gamma), blk);
    return result;
}

SolveResult exhaustive_search(const Atg3dScenario& scn, const GridSpec& grid) {
    scn.validate();
    if (!grid.H) throw ConfigError("invalid grid: a 3-D search needs an H axis");
    const GridAxis& hx = *grid.H;
    check_axis(grid.x, scn.x_min, scn.x_max, "x");
    check_axis(hx, scn.H_min, scn.H_max, "H");
    check_axis(grid.p1, 0.0, scn.power_budget, "p1");
    const double P = scn.power_budget;
    const long nh = hx.points;
    const long np = grid.p1.points;

    const Best best = parallel_best(grid.x.points, [&](int i) {
        Best local;
        for (long k = 0; k < nh; ++k) {
            const auto g = atg_gains(scn.D, {grid.x.at(i), hx.at(static_cast<int>(k))}, scn.hop1,
                                     scn.hop2);
            for (long j = 0; j < np; ++j) {
                const double p1 = grid.p1.at(static_cast<int>(j));
                const double v = af_snr(g.h1, g.h2, {p1, P - p1}).value();
                local = better(local, {v, (static_cast<long>(i) * nh + k) * np + j});
            }
        }
        return local;
    });

    const long ij = best.index / np;
    double x = grid.x.at(static_cast<int>(ij / nh));
    double H = hx.at(static_cast<int>(ij % nh));
    double p1 = grid.p1.at(static_cast<int>(best.index % np));
    double gamma = best.value;

    SolveResult result;
    result.solver_id = "exhaustive";
    result.trace.push_back(gamma);
    result.iterations = refine({{&x, grid.x.lo, grid.x.hi, grid.x.step()},
                                {&H, hx.lo, hx.hi, hx.step()},
                                {&p1, grid.p1.lo, grid.p1.hi, grid.p1.step()}},
                               [&] { return gamma_3d_unchecked(scn, {x, H}, {p1, P - p1}); },
                               grid.refine_passes, gamma, result.trace);

    result.placement = {x, H};
    result.powers = {p1, P - p1};
    result.snr = gamma;
    result.error_prob = decoding_error_probability(Snr(gamma), scn.blk);
    return result;
}

SolveResult fixed_location_baseline(const FreeSpaceScenario& scn, const BlocklengthParams& blk) {
    BcdOptions opt;
    opt.optimize_location = false;
    auto r = bcd_solve(scn, blk, default_start(scn), opt);
    r.solver_id = "fixed-loc";
    return r;
}

SolveResult fixed_power_baseline(const FreeSpaceScenario& scn, const BlocklengthParams& blk) {
    BcdOptions opt;
    opt.optimize_power = false;
    auto r = bcd_solve(scn, blk, default_start(scn), opt);
    r.solver_id = "fixed-power";
    return r;
}

SolveResult fixed_location_baseline(const Atg3dScenario& scn) {
    Bcd3dOptions opt;
    opt.optimize_x = false;
    return bcd_3d_variant(scn, default_start_3d(scn), opt, "fixed-loc");
}

SolveResult fixed_power_baseline(const Atg3dScenario& scn) {
    Bcd3dOptions opt;
    opt.optimize_power = false;
    return bcd_3d_variant(scn, default_start_3d(scn), opt, "fixed-power");
}

SolveResult fixed_height_baseline(const Atg3dScenario& scn, double height) {
    Bcd3dOptions opt;
    opt.optimize_height = false;
    auto start = default_start_3d(scn);
    start.placement.H = height;
    return bcd_3d_variant(scn, start, opt, "fixed-h");
}

}  // namespace uavrelay
