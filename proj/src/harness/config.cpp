#include "uavrelay/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "uavrelay/errors.hpp"

namespace uavrelay::harness {

using nlohmann::json;

namespace {

// Wraps one JSON object, remembers which keys were read and rejects the rest.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) fail("", "expected an object");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        throw ConfigError(path_ + (key.empty() ? "" : "/" + key) + ": " + msg);
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) fail(key, "required key is missing");
        return *v;
    }

    double number(const std::string& key) {
        const json& v = require(key);
        return as_number(key, v);
    }

    std::optional<double> optional_number(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) return std::nullopt;
        return as_number(key, *v);
    }

    int integer(const std::string& key) {
        const json& v = require(key);
        return as_integer(key, v);
    }

    std::optional<int> optional_integer(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) return std::nullopt;
        return as_integer(key, *v);
    }

    std::string string(const std::string& key) {
        const json& v = require(key);
        if (!v.is_string()) fail(key, "expected a string");
        return v.get<std::string>();
    }

    std::optional<std::string> optional_string(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) return std::nullopt;
        if (!v->is_string()) fail(key, "expected a string");
        return v->get<std::string>();
    }

    std::string child_path(const std::string& key) const { return path_ + "/" + key; }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) fail(it.key(), "unknown key");
        }
    }

private:
    double as_number(const std::string& key, const json& v) const {
        if (!v.is_number()) fail(key, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(key, "must be finite");
        return d;
    }

    int as_integer(const std::string& key, const json& v) const {
        if (!v.is_number_integer()) fail(key, "expected an integer");
        const auto i = v.get<long long>();
        if (i < -2147483647LL || i > 2147483647LL) fail(key, "integer out of range");
        return static_cast<int>(i);
    }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

HopSpec parse_hop(const json& v, const std::string& path, double carrier_hz, double noise_db) {
    try {
        if (v.is_string()) {
            const auto name = v.get<std::string>();
            return {name, make_environment(name, carrier_hz, noise_db)};
        }
        ObjectReader r(v, path);
        AtgEnvironment env;
        env.s_curve_a = r.number("a");
        env.s_curve_b = r.number("b");
        env.excess_loss_los_db = r.number("eta_los_db");
        env.excess_loss_nlos_db = r.number("eta_nlos_db");
        env.carrier_hz = r.optional_number("carrier_hz").value_or(carrier_hz);
        env.noise_power_db = r.optional_number("noise_power_db").value_or(noise_db);
        const auto label = r.optional_string("label").value_or("custom");
        r.finish();
        env.validate();
        return {label, env};
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw ConfigError(path + ": " + what);
    }
}

const char* kSweepParams[] = {"M", "packet_bits", "power_budget_w", "H", "hop2"};

}  // namespace

const char* to_string(ModelKind kind) { return kind == ModelKind::FreeSpace ? "freespace" : "3d"; }

const std::vector<std::string>& known_solvers(ModelKind kind) {
    static const std::vector<std::string> freespace = {"bcd", "high-snr", "exhaustive", "fixed-loc",
                                                       "fixed-power"};
    static const std::vector<std::string> atg = {"bcd", "exhaustive", "fixed-h", "fixed-loc",
                                                 "fixed-power"};
    return kind == ModelKind::FreeSpace ? freespace : atg;
}

GridSpec ScenarioConfig::grid_spec_freespace() const {
    GridSpec g = GridSpec::defaults(freespace);
    if (grid.x_points) g.x.points = *grid.x_points;
    if (grid.p_points) g.p1.points = *grid.p_points;
    g.refine_passes = grid.refine_passes;
    return g;
}

GridSpec ScenarioConfig::grid_spec_atg() const {
    GridSpec g = GridSpec::defaults(atg);
    if (grid.x_points) g.x.points = *grid.x_points;
    if (grid.p_points) g.p1.points = *grid.p_points;
    if (grid.h_points) g.H->points = *grid.h_points;
    g.refine_passes = grid.refine_passes;
    return g;
}

std::vector<std::string> parse_solver_list(const std::string& spec, ModelKind kind) {
    std::vector<std::string> out;
    std::stringstream ss(spec);
    std::string name;
    const auto& known = known_solvers(kind);
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw ConfigError("solver '" + name + "' is not available for the " +
                              to_string(kind) + " model");
        }
        out.push_back(name);
    }
    if (out.empty()) throw ConfigError("solver list is empty");
    return out;
}

void apply_grid_spec(const std::string& spec, GridSettings& grid) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("grid spec item '" + item + "' needs key=value");
        const std::string key = item.substr(0, eq);
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("grid spec value in '" + item + "' is not an integer");
        }
        if (value < 1 && key != "refine") throw ConfigError("grid axis '" + key + "' needs >= 1 point");
        if (key == "x") grid.x_points = value;
        else if (key == "p") grid.p_points = value;
        else if (key == "h") grid.h_points = value;
        else if (key == "refine") grid.refine_passes = std::max(0, value);
        else throw ConfigError("unknown grid spec key '" + key + "' (use x, p, h, refine)");
    }
}

ScenarioConfig parse_config(const json& doc) {
    ScenarioConfig cfg;
    ObjectReader root(doc, "");

    const int version = root.integer("schema_version");
    if (version != kSchemaVersion) {
        root.fail("schema_version", "unsupported version " + std::to_string(version));
    }
    cfg.id = root.string("id");
    const auto model = root.string("model");
    if (model == "freespace") cfg.model = ModelKind::FreeSpace;
    else if (model == "3d") cfg.model = ModelKind::Atg3d;
    else root.fail("model", "expected \"freespace\" or \"3d\"");

    {
        ObjectReader r(root.require("blocklength"), root.child_path("blocklength"));
        const int bits = r.integer("packet_bits");
        const auto total = r.optional_integer("total_blocklength");
        const auto bw = r.optional_number("bandwidth_hz");
        const auto lat = r.optional_number("latency_s");
        r.finish();
        try {
            if (total && !bw && !lat) {
                cfg.blk = BlocklengthParams(bits, *total);
            } else if (!total && bw && lat) {
                cfg.blk = BlocklengthParams::from_bandwidth_latency(bits, *bw, *lat);
            } else {
                r.fail("", "give either total_blocklength or bandwidth_hz with latency_s");
            }
        } catch (const DomainError& e) {
            r.fail("", e.what());
        }
    }

    cfg.power_budget = root.number("power_budget_w");
    if (!(cfg.power_budget > 0.0)) root.fail("power_budget_w", "must be positive");

    {
        ObjectReader g(root.require("geometry"), root.child_path("geometry"));
        const double D = g.number("D");
        const double x_min = g.number("x_min");
        const double x_max = g.number("x_max");
        const auto H = g.optional_number("H");
        const auto H_min = g.optional_number("H_min");
        const auto H_max = g.optional_number("H_max");
        g.finish();
        if (H_min.has_value() != H_max.has_value()) g.fail("", "give both H_min and H_max or neither");

        if (cfg.model == ModelKind::FreeSpace) {
            if (!H) g.fail("H", "required for the freespace model");
            ObjectReader fs(root.require("freespace"), root.child_path("freespace"));
            cfg.freespace.D = D;
            cfg.freespace.H = *H;
            cfg.freespace.x_min = x_min;
            cfg.freespace.x_max = x_max;
            cfg.freespace.beta1 = db_to_linear(fs.number("beta1_db"));
            cfg.freespace.beta2 = db_to_linear(fs.number("beta2_db"));
            fs.finish();
            cfg.freespace.power_budget = cfg.power_budget;
            cfg.freespace.H_min = H_min.value_or(0.0);
            cfg.freespace.H_max = H_max.value_or(0.0);
            if (root.has("atg")) root.fail("atg", "not allowed for the freespace model");
            cfg.freespace.validate();
        } else {
            if (H) g.fail("H", "not used by the 3d model; set H_min/H_max");
            if (!H_min) g.fail("H_min", "required for the 3d model");
            ObjectReader a(root.require("atg"), root.child_path("atg"));
            const double carrier = a.number("carrier_hz");
            const double noise = a.number("noise_power_db");
            cfg.hop1 = parse_hop(a.require("hop1"), a.child_path("hop1"), carrier, noise);
            cfg.hop2 = parse_hop(a.require("hop2"), a.child_path("hop2"), carrier, noise);
            a.finish();
            cfg.atg.D = D;
            cfg.atg.x_min = x_min;
            cfg.atg.x_max = x_max;
            cfg.atg.H_min = *H_min;
            cfg.atg.H_max = *H_max;
            cfg.atg.hop1 = cfg.hop1.env;
            cfg.atg.hop2 = cfg.hop2.env;
            cfg.atg.power_budget = cfg.power_budget;
            cfg.atg.blk = cfg.blk;
            if (root.has("freespace")) root.fail("freespace", "not allowed for the 3d model");
            cfg.atg.validate();
        }
    }

    if (const json* s = root.find("solvers")) {
        if (!s->is_array() || s->empty()) root.fail("solvers", "expected a non-empty array of names");
        std::string joined;
        for (const auto& item : *s) {
            if (!item.is_string()) root.fail("solvers", "solver names must be strings");
            joined += item.get<std::string>() + ",";
        }
        try {
            cfg.solvers = parse_solver_list(joined, cfg.model);
        } catch (const ConfigError& e) {
            root.fail("solvers", e.what());
        }
    } else {
        cfg.solvers = known_solvers(cfg.model);
    }

    if (const auto h = root.optional_number("fixed_height_m")) {
        if (cfg.model != ModelKind::Atg3d) root.fail("fixed_height_m", "only used by the 3d model");
        if (!(cfg.atg.H_min <= *h && *h <= cfg.atg.H_max)) {
            root.fail("fixed_height_m", "must lie within [H_min, H_max]");
        }
        cfg.fixed_height = *h;
    } else if (cfg.model == ModelKind::Atg3d) {
        cfg.fixed_height = std::clamp(100.0, cfg.atg.H_min, cfg.atg.H_max);
    }

    if (const json* s = root.find("sweep")) {
        ObjectReader r(*s, root.child_path("sweep"));
        SweepSpec sweep;
        sweep.param = r.string("param");
        if (std::find(std::begin(kSweepParams), std::end(kSweepParams), sweep.param) ==
            std::end(kSweepParams)) {
            r.fail("param", "unknown sweep parameter '" + sweep.param + "'");
        }
        const json& values = r.require("values");
        if (!values.is_array()) r.fail("values", "expected an array");
        r.finish();
        for (const auto& v : values) {
            if (v.is_number()) sweep.values.emplace_back(v.get<double>());
            else if (v.is_string()) sweep.values.emplace_back(v.get<std::string>());
            else r.fail("values", "entries must be numbers or strings");
        }
        // Validate every point up front so a bad entry is a config error.
        for (const auto& v : sweep.values) {
            try {
                (void)with_sweep_value(cfg, sweep.param, v);
            } catch (const std::exception& e) {
                r.fail("values", e.what());
            }
        }
        cfg.sweep = std::move(sweep);
    }

    if (const json* g = root.find("grid")) {
        ObjectReader r(*g, root.child_path("grid"));
        auto positive = [&](const char* key) -> std::optional<int> {
            const auto v = r.optional_integer(key);
            if (v && *v < 1) r.fail(key, "must be >= 1");
            return v;
        };
        cfg.grid.x_points = positive("x_points");
        cfg.grid.p_points = positive("p_points");
        cfg.grid.h_points = positive("h_points");
        if (const auto passes = r.optional_integer("refine_passes")) {
            if (*passes < 0) r.fail("refine_passes", "must be >= 0");
            cfg.grid.refine_passes = *passes;
        }
        r.finish();
    }

    if (const json* p = root.find("profile")) {
        ObjectReader r(*p, root.child_path("profile"));
        if (cfg.model != ModelKind::Atg3d) r.fail("", "profiles need the 3d model");
        ProfileSpec prof;
        const auto axis = r.string("axis");
        if (axis != "H" && axis != "x") r.fail("axis", "expected \"H\" or \"x\"");
        prof.axis = axis[0];
        prof.fixed = r.number("fixed");
        const double lo = prof.axis == 'H' ? cfg.atg.H_min : cfg.atg.x_min;
        const double hi = prof.axis == 'H' ? cfg.atg.H_max : cfg.atg.x_max;
        prof.start = r.optional_number("start").value_or(lo);
        prof.stop = r.optional_number("stop").value_or(hi);
        prof.step = r.optional_number("step").value_or(1.0);
        prof.p1 = r.optional_number("p1_w");
        if (const json* hops = r.find("hop2")) {
            if (!hops->is_array() || hops->empty()) r.fail("hop2", "expected a non-empty array");
            for (std::size_t i = 0; i < hops->size(); ++i) {
                prof.hop2.push_back(parse_hop((*hops)[i], r.child_path("hop2/" + std::to_string(i)),
                                              cfg.hop1.env.carrier_hz, cfg.hop1.env.noise_power_db));
            }
        } else {
            for (const auto& preset : environment_presets()) {
                prof.hop2.push_back({std::string(preset.name),
                                     make_environment(preset.name, cfg.hop1.env.carrier_hz,
                                                      cfg.hop1.env.noise_power_db)});
            }
        }
        r.finish();
        if (!(prof.step > 0.0)) r.fail("step", "must be positive");
        if (!(lo <= prof.start && prof.start <= prof.stop && prof.stop <= hi)) {
            r.fail("", "need bounds-respecting start <= stop");
        }
        const double clo = prof.axis == 'H' ? cfg.atg.x_min : cfg.atg.H_min;
        const double chi = prof.axis == 'H' ? cfg.atg.x_max : cfg.atg.H_max;
        if (!(clo <= prof.fixed && prof.fixed <= chi)) r.fail("fixed", "outside the flying region");
        if (prof.p1 && !(*prof.p1 >= 0.0 && *prof.p1 <= cfg.power_budget)) {
            r.fail("p1_w", "must lie within [0, power_budget_w]");
        }
        cfg.profile = std::move(prof);
    }

    if (const json* o = root.find("outputs")) {
        ObjectReader r(*o, root.child_path("outputs"));
        cfg.outputs.csv = r.optional_string("csv");
        cfg.outputs.json = r.optional_string("json");
        cfg.outputs.trace = r.optional_string("trace");
        r.finish();
    }

    root.finish();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
    }
    return parse_config(doc);
}

ScenarioConfig with_sweep_value(const ScenarioConfig& base, const std::string& param,
                                const SweepValue& value) {
    ScenarioConfig cfg = base;
    auto number = [&]() -> double {
        if (!std::holds_alternative<double>(value)) {
            throw ConfigError("sweep parameter '" + param + "' needs numeric values");
        }
        return std::get<double>(value);
    };
    auto integer = [&]() -> int {
        const double v = number();
        if (v != std::floor(v) || std::abs(v) > 1e9) {
            throw ConfigError("sweep parameter '" + param + "' needs integer values");
        }
        return static_cast<int>(v);
    };
    try {
        if (param == "M") {
            cfg.blk = BlocklengthParams(base.blk.packet_bits(), integer());
        } else if (param == "packet_bits") {
            cfg.blk = BlocklengthParams(integer(), base.blk.total_blocklength());
        } else if (param == "power_budget_w") {
            cfg.power_budget = number();
            cfg.freespace.power_budget = cfg.power_budget;
            cfg.atg.power_budget = cfg.power_budget;
        } else if (param == "H") {
            if (base.model != ModelKind::FreeSpace) throw ConfigError("sweep over H needs the freespace model");
            cfg.freespace.H = number();
        } else if (param == "hop2") {
            if (base.model != ModelKind::Atg3d) throw ConfigError("sweep over hop2 needs the 3d model");
            if (!std::holds_alternative<std::string>(value)) {
                throw ConfigError("sweep over hop2 needs preset names");
            }
            const auto& name = std::get<std::string>(value);
            cfg.hop2 = {name, make_environment(name, base.hop2.env.carrier_hz,
                                               base.hop2.env.noise_power_db)};
            cfg.atg.hop2 = cfg.hop2.env;
        } else {
            throw ConfigError("unknown sweep parameter '" + param + "'");
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    cfg.atg.blk = cfg.blk;
    if (cfg.model == ModelKind::FreeSpace) cfg.freespace.validate();
    else cfg.atg.validate();
    return cfg;
}

std::string sweep_value_text(const SweepValue& value) {
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value));
    return buf;
}

}  // namespace uavrelay::harness
