#include "uavrelay/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

namespace uavrelay::harness {

std::string format_number(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

const std::vector<std::string>& result_columns() {
    static const std::vector<std::string> cols = {
        "scenario_id", "solver", "sweep_param", "sweep_value", "hop1", "hop2",
        "packet_bits", "total_blocklength", "x", "H", "p1", "p2",
        "gamma", "epsilon", "iterations", "status", "wall_time_s"};
    return cols;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    const auto& cols = result_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\r\n";
    for (const auto& r : rows) {
        out << csv_field(r.scenario_id) << ',' << csv_field(r.solver_id) << ','
            << csv_field(r.sweep_param) << ',' << csv_field(r.sweep_value) << ','
            << csv_field(r.hop1) << ',' << csv_field(r.hop2) << ',' << r.packet_bits << ','
            << r.total_blocklength << ',' << format_number(r.x) << ',' << format_number(r.H) << ','
            << format_number(r.p1) << ',' << format_number(r.p2) << ','
            << format_number(r.gamma) << ',' << format_number(r.epsilon) << ',' << r.iterations
            << ',' << csv_field(r.status) << ',' << format_number(r.wall_time_s) << "\r\n";
    }
}

void write_results_json(std::ostream& out, const ScenarioConfig& cfg,
                        const std::vector<ResultRow>& rows) {
    using nlohmann::ordered_json;
    auto num = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
    ordered_json doc;
    doc["format_version"] = kResultFormatVersion;
    doc["scenario_id"] = cfg.id;
    doc["model"] = to_string(cfg.model);
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["scenario_id"] = r.scenario_id;
        j["solver"] = r.solver_id;
        j["sweep_param"] = r.sweep_param;
        j["sweep_value"] = r.sweep_value;
        j["hop1"] = r.hop1;
        j["hop2"] = r.hop2;
        j["packet_bits"] = r.packet_bits;
        j["total_blocklength"] = r.total_blocklength;
        j["x"] = num(r.x);
        j["H"] = num(r.H);
        j["p1"] = num(r.p1);
        j["p2"] = num(r.p2);
        j["gamma"] = num(r.gamma);
        j["epsilon"] = num(r.epsilon);
        j["iterations"] = r.iterations;
        j["status"] = r.status;
        j["wall_time_s"] = r.wall_time_s;
        doc["rows"].push_back(std::move(j));
    }
    out << doc.dump(2) << "\n";
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "scenario_id,solver,sweep_index,iteration,gamma\r\n";
    for (const auto& r : rows) {
        out << csv_field(r.scenario_id) << ',' << csv_field(r.solver_id) << ',' << r.sweep_index
            << ',' << r.iteration << ',' << format_number(r.gamma) << "\r\n";
    }
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
    out << "hop1,hop2,axis,fixed,coordinate,gamma\r\n";
    for (const auto& r : rows) {
        out << csv_field(r.hop1) << ',' << csv_field(r.hop2) << ',' << r.axis << ','
            << format_number(r.fixed) << ',' << format_number(r.coordinate) << ','
            << format_number(r.gamma) << "\r\n";
    }
}

}  // namespace uavrelay::harness
