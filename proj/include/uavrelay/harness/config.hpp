#pragma once

// Scenario configuration for the experiment harness. A config is one JSON
// object; the layout is documented in docs/config-schema.md. Every object is
// checked for unknown keys and every value for type and range before any
// computation starts. dB inputs are converted to linear once, here.

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uavrelay/channel.hpp"
#include "uavrelay/fbl.hpp"
#include "uavrelay/oracle.hpp"
#include "uavrelay/solver3d.hpp"

namespace uavrelay::harness {

inline constexpr int kSchemaVersion = 1;

enum class ModelKind { FreeSpace, Atg3d };

const char* to_string(ModelKind kind);

/// An environment with the name it was configured by ("suburban", "custom", ...).
struct HopSpec {
    std::string label;
    AtgEnvironment env;
};

using SweepValue = std::variant<double, std::string>;

struct SweepSpec {
    std::string param;  // M | packet_bits | power_budget_w | H | hop2
    std::vector<SweepValue> values;
};

struct ProfileSpec {
    char axis = 'H';    // 'H' samples height at fixed x, 'x' samples position at fixed H
    double fixed = 0.0; // companion coordinate
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<HopSpec> hop2;  // one curve per entry
    std::optional<double> p1;   // defaults to P/2
};

/// Unset counts take the model default: 2000 x 2000 for free space, 200^3 for 3-D.
struct GridSettings {
    std::optional<int> x_points;
    std::optional<int> p_points;
    std::optional<int> h_points;
    int refine_passes = 3;
};

struct OutputPaths {
    std::optional<std::string> csv;
    std::optional<std::string> json;
    std::optional<std::string> trace;
};

struct ScenarioConfig {
    std::string id;
    ModelKind model = ModelKind::FreeSpace;
    BlocklengthParams blk{100, 80};
    double power_budget = 0.0;

    FreeSpaceScenario freespace;  // model == FreeSpace
    Atg3dScenario atg;            // model == Atg3d
    HopSpec hop1;
    HopSpec hop2;

    std::vector<std::string> solvers;
    std::optional<SweepSpec> sweep;
    GridSettings grid;
    double fixed_height = 100.0;
    std::optional<ProfileSpec> profile;
    OutputPaths outputs;

    GridSpec grid_spec_freespace() const;
    GridSpec grid_spec_atg() const;
};

/// Solver names accepted for a model kind, in canonical order.
const std::vector<std::string>& known_solvers(ModelKind kind);

/// Throws ConfigError with a JSON-pointer-like path on any schema violation.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Comma-separated solver list. Throws ConfigError on names unknown for the model.
std::vector<std::string> parse_solver_list(const std::string& spec, ModelKind kind);

/// "x=2000,p=2000,h=200,refine=3"; unspecified keys keep their values.
void apply_grid_spec(const std::string& spec, GridSettings& grid);

/// Copy of the config with the sweep parameter set to value.
ScenarioConfig with_sweep_value(const ScenarioConfig& base, const std::string& param,
                                const SweepValue& value);

std::string sweep_value_text(const SweepValue& value);

}  // namespace uavrelay::harness
