#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavrelay/harness/config.hpp"
#include "uavrelay/solve_result.hpp"

namespace uavrelay::harness {

inline constexpr const char* kStatusOk = "ok";

/// One solver run at one sweep point. Numeric fields are NaN when status is
/// not "ok".
struct ResultRow {
    std::string scenario_id;
    std::string solver_id;
    std::string sweep_param;  // empty when no sweep was applied
    std::string sweep_value;
    int sweep_index = 0;
    std::string hop1;  // environment labels, 3-D model only
    std::string hop2;
    int packet_bits = 0;
    int total_blocklength = 0;
    double x = 0.0;
    double H = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double gamma = 0.0;
    double epsilon = 1.0;
    int iterations = 0;
    std::string status = kStatusOk;
    double wall_time_s = 0.0;
};

struct TraceRow {
    std::string scenario_id;
    std::string solver_id;
    int sweep_index = 0;
    int iteration = 0;
    double gamma = 0.0;
};

struct RunOptions {
    bool use_sweep = true;
    std::optional<std::vector<std::string>> solvers;  // overrides the config list
    int jobs = 1;                                     // concurrent sweep points
};

struct ExperimentOutput {
    std::vector<ResultRow> rows;
    std::vector<TraceRow> traces;

    bool any_failure() const;
};

/// Runs one named solver on a fully resolved config.
SolveResult run_solver(const ScenarioConfig& cfg, const std::string& solver);

/// Every requested solver at every sweep point (or once without a sweep).
/// Rows are ordered by (solver, sweep index) regardless of execution order.
/// Solver exceptions become rows with an error status; the run continues.
ExperimentOutput run_experiment(const ScenarioConfig& cfg, const RunOptions& options = {});

struct ProfileRow {
    std::string hop1;
    std::string hop2;
    char axis = 'H';
    double fixed = 0.0;
    double coordinate = 0.0;
    double gamma = 0.0;
};

/// Sampled gamma(H) or gamma(x) curves, one per configured hop-2 environment.
/// Throws ConfigError when the config has no profile section.
std::vector<ProfileRow> emit_profile_curves(const ScenarioConfig& cfg);

}  // namespace uavrelay::harness
