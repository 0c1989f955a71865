#include "uavrelay/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>

#include "uavrelay/errors.hpp"
#include "uavrelay/freespace.hpp"
#include "uavrelay/high_snr.hpp"
#include "uavrelay/oracle.hpp"
#include "uavrelay/solver3d.hpp"

namespace uavrelay::harness {

namespace {

struct SweepPoint {
    std::string value_text;
    ScenarioConfig cfg;
};

struct TaskOutput {
    ResultRow row;
    std::vector<double> trace;
};

TaskOutput run_task(const SweepPoint& point, const std::string& param, int sweep_index,
                    const std::string& solver) {
    TaskOutput out;
    ResultRow& row = out.row;
    const ScenarioConfig& cfg = point.cfg;
    row.scenario_id = cfg.id;
    row.solver_id = solver;
    row.sweep_param = param;
    row.sweep_value = point.value_text;
    row.sweep_index = sweep_index;
    if (cfg.model == ModelKind::Atg3d) {
        row.hop1 = cfg.hop1.label;
        row.hop2 = cfg.hop2.label;
    }
    row.packet_bits = cfg.blk.packet_bits();
    row.total_blocklength = cfg.blk.total_blocklength();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const SolveResult r = run_solver(cfg, solver);
        row.x = r.placement.x;
        row.H = r.placement.H;
        row.p1 = r.powers.p1;
        row.p2 = r.powers.p2;
        row.gamma = r.snr;
        row.epsilon = r.error_prob;
        row.iterations = r.iterations;
        row.status = kStatusOk;
        out.trace = r.trace;
    } catch (const std::exception& e) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        row.x = row.H = row.p1 = row.p2 = row.gamma = row.epsilon = nan;
        row.iterations = 0;
        row.status = std::string("error: ") + e.what();
    }
    row.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace

bool ExperimentOutput::any_failure() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const ResultRow& r) { return r.status != kStatusOk; });
}

SolveResult run_solver(const ScenarioConfig& cfg, const std::string& solver) {
    if (cfg.model == ModelKind::FreeSpace) {
        const auto& scn = cfg.freespace;
        if (solver == "bcd") return bcd_solve(scn, cfg.blk);
        if (solver == "high-snr") return high_snr_solve(scn, cfg.blk);
        if (solver == "exhaustive") return exhaustive_search(scn, cfg.blk, cfg.grid_spec_freespace());
        if (solver == "fixed-loc") return fixed_location_baseline(scn, cfg.blk);
        if (solver == "fixed-power") return fixed_power_baseline(scn, cfg.blk);
    } else {
        const auto& scn = cfg.atg;
        if (solver == "bcd") return bcd_solve_3d(scn);
        if (solver == "exhaustive") return exhaustive_search(scn, cfg.grid_spec_atg());
        if (solver == "fixed-h") return fixed_height_baseline(scn, cfg.fixed_height);
        if (solver == "fixed-loc") return fixed_location_baseline(scn);
        if (solver == "fixed-power") return fixed_power_baseline(scn);
    }
    throw ConfigError("solver '" + solver + "' is not available for the " + to_string(cfg.model) +
                      " model");
}

ExperimentOutput run_experiment(const ScenarioConfig& cfg, const RunOptions& options) {
    std::vector<SweepPoint> points;
    std::string param;
    if (options.use_sweep && cfg.sweep) {
        param = cfg.sweep->param;
        for (const auto& v : cfg.sweep->values) {
            points.push_back({sweep_value_text(v), with_sweep_value(cfg, param, v)});
        }
    } else {
        points.push_back({"", cfg});
    }
    const auto& solvers = options.solvers ? *options.solvers : cfg.solvers;

    struct Task {
        std::size_t point;
        const std::string* solver;
    };
    std::vector<Task> tasks;
    for (const auto& s : solvers) {
        for (std::size_t i = 0; i < points.size(); ++i) tasks.push_back({i, &s});
    }

    std::vector<TaskOutput> outputs(tasks.size());
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, options.jobs));
    for (std::size_t begin = 0; begin < tasks.size(); begin += jobs) {
        const std::size_t end = std::min(tasks.size(), begin + jobs);
        if (jobs == 1) {
            const auto& t = tasks[begin];
            outputs[begin] = run_task(points[t.point], param, static_cast<int>(t.point), *t.solver);
            continue;
        }
        std::vector<std::future<TaskOutput>> batch;
        for (std::size_t k = begin; k < end; ++k) {
            const auto& t = tasks[k];
            batch.push_back(std::async(std::launch::async, run_task, std::cref(points[t.point]),
                                       std::cref(param), static_cast<int>(t.point),
                                       std::cref(*t.solver)));
        }
        for (std::size_t k = begin; k < end; ++k) outputs[k] = batch[k - begin].get();
    }

    ExperimentOutput result;
    for (auto& o : outputs) {
        for (std::size_t i = 0; i < o.trace.size(); ++i) {
            result.traces.push_back({o.row.scenario_id, o.row.solver_id, o.row.sweep_index,
                                     static_cast<int>(i), o.trace[i]});
        }
        result.rows.push_back(std::move(o.row));
    }
    return result;
}

std::vector<ProfileRow> emit_profile_curves(const ScenarioConfig& cfg) {
    if (cfg.model != ModelKind::Atg3d || !cfg.profile) {
        throw ConfigError("profile output needs a 3d config with a profile section");
    }
    const ProfileSpec& prof = *cfg.profile;
    const double p1 = prof.p1.value_or(0.5 * cfg.power_budget);
    const PowerSplit powers{p1, cfg.power_budget - p1};

    std::vector<ProfileRow> rows;
    for (const auto& hop2 : prof.hop2) {
        Atg3dScenario scn = cfg.atg;
        scn.hop2 = hop2.env;
        const auto curve = prof.axis == 'H'
                               ? height_profile(scn, prof.fixed, powers, prof.start, prof.stop, prof.step)
                               : x_profile(scn, prof.fixed, powers, prof.start, prof.stop, prof.step);
        for (const auto& pt : curve) {
            rows.push_back({cfg.hop1.label, hop2.label, prof.axis, prof.fixed, pt.coordinate, pt.gamma});
        }
    }
    return rows;
}

}  // namespace uavrelay::harness
