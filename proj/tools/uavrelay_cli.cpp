// uavrelay: experiment harness for UAV relay placement and power allocation.
//
//   uavrelay solve   --config cfg.json [--out rows.csv] [--trace trace.csv] [--solver a,b]
//   uavrelay sweep   --config cfg.json [--out rows.csv] [--jobs N]
//   uavrelay oracle  --config cfg.json [--grid x=2000,p=2000,h=200]
//   uavrelay profile --config cfg.json [--out curves.csv]
//
// Exit codes: 0 success, 2 configuration error, 3 at least one solver failed.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "uavrelay/errors.hpp"
#include "uavrelay/harness/config.hpp"
#include "uavrelay/harness/experiment.hpp"
#include "uavrelay/harness/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace uavrelay;
using namespace uavrelay::harness;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolverFailure = 3;

struct CommonArgs {
    std::string config;
    std::string out;
    std::string json;
    std::string trace;
    std::string solvers;
    std::string grid;
    int jobs = 1;
};

int report_config_error(const std::string& message) {
    nlohmann::ordered_json diag;
    diag["error"] = "config";
    diag["message"] = message;
    std::cerr << diag.dump() << "\n";
    return kExitConfig;
}

// Writes to path, or to stdout when path is empty or "-".
template <class Writer>
void write_to(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    write(out);
}

std::string pick(const std::string& flag, const std::optional<std::string>& from_config) {
    return !flag.empty() ? flag : from_config.value_or("");
}

int run_rows(const CommonArgs& args, bool use_sweep, std::optional<std::vector<std::string>> forced) {
    ScenarioConfig cfg = load_config(args.config);
    if (!args.grid.empty()) apply_grid_spec(args.grid, cfg.grid);
    if (use_sweep && !cfg.sweep) throw ConfigError("sweep command needs a sweep section");

    RunOptions opt;
    opt.use_sweep = use_sweep;
    opt.jobs = args.jobs;
    if (forced) opt.solvers = std::move(forced);
    else if (!args.solvers.empty()) opt.solvers = parse_solver_list(args.solvers, cfg.model);

    const std::string csv_path = pick(args.out, cfg.outputs.csv);
    std::string json_path = pick(args.json, cfg.outputs.json);
    if (json_path.empty() && !csv_path.empty() && csv_path != "-") {
        json_path = fs::path(csv_path).replace_extension(".json").string();
    }
    const std::string trace_path = pick(args.trace, cfg.outputs.trace);

    const ExperimentOutput result = run_experiment(cfg, opt);

    write_to(csv_path, [&](std::ostream& os) { write_results_csv(os, result.rows); });
    if (!json_path.empty()) {
        write_to(json_path, [&](std::ostream& os) { write_results_json(os, cfg, result.rows); });
    }
    if (!trace_path.empty()) {
        write_to(trace_path, [&](std::ostream& os) { write_trace_csv(os, result.traces); });
    }
    if (result.any_failure()) {
        for (const auto& r : result.rows) {
            if (r.status != kStatusOk) {
                nlohmann::ordered_json diag;
                diag["error"] = "solver";
                diag["solver"] = r.solver_id;
                diag["sweep_value"] = r.sweep_value;
                diag["message"] = r.status;
                std::cerr << diag.dump() << "\n";
            }
        }
        return kExitSolverFailure;
    }
    return kExitOk;
}

int run_profile(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args.config);
    const auto rows = emit_profile_curves(cfg);
    write_to(pick(args.out, cfg.outputs.csv), [&](std::ostream& os) { write_profile_csv(os, rows); });
    return kExitOk;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool rows) {
    cmd->add_option("--config", args.config, "Scenario config (JSON)")->required();
    cmd->add_option("--out", args.out, "Output CSV path ('-' for stdout)");
    if (!rows) return;
    cmd->add_option("--json", args.json, "JSON mirror path (default: --out with .json)");
    cmd->add_option("--trace", args.trace, "Per-iteration convergence trace CSV");
    cmd->add_option("--grid", args.grid, "Exhaustive-search grid, e.g. x=2000,p=2000,h=200,refine=3");
    cmd->add_option("--jobs", args.jobs, "Concurrent sweep points")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV amplify-and-forward relay placement and power allocation"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* solve = app.add_subcommand("solve", "Run solvers on the base scenario");
    auto* sweep = app.add_subcommand("sweep", "Run solvers at every sweep point");
    auto* oracle = app.add_subcommand("oracle", "Run the exhaustive-search oracle");
    auto* profile = app.add_subcommand("profile", "Emit gamma(H) or gamma(x) curves");
    for (auto* cmd : {solve, sweep}) {
        add_common(cmd, args, true);
        cmd->add_option("--solver", args.solvers, "Comma-separated solver names");
    }
    add_common(oracle, args, true);
    add_common(profile, args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (solve->parsed()) return run_rows(args, false, std::nullopt);
        if (sweep->parsed()) return run_rows(args, true, std::nullopt);
        if (oracle->parsed()) return run_rows(args, false, std::vector<std::string>{"exhaustive"});
        return run_profile(args);
    } catch (const ConfigError& e) {
        return report_config_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":" << nlohmann::json(e.what()).dump()
                  << "}\n";
        return 1;
    }
}
