#include "leocov/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace leocov {

namespace {
constexpr const char* echo_prefix = "# config: ";
}

std::string format_number(double x) {
    if (!std::isfinite(x)) throw std::runtime_error("refusing to write a non-finite number to CSV");
    if (x == 0.0) return "0";  // also folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string provenance_block(const std::string& command, const ExperimentConfig& cfg,
                             const std::vector<std::string>& extra) {
    std::ostringstream out;
    out << "# leocov " << command << "\n";
    out << echo_prefix << to_json(cfg).dump() << "\n";
    out << "# metric: " << to_string(cfg.metric) << "\n";
    out << "# sweep_axis: " << cfg.sweep.axis << "\n";
    if (cfg.mc.enabled) {
        out << "# seed: " << cfg.mc.seed << "\n";
        out << "# trials: " << cfg.mc.trials << "\n";
        out << "# noise_in_sinr: " << to_string(cfg.mc.noise_in_sinr) << "\n";
        out << "# condition_on_nonempty_visible_set: " << (cfg.mc.condition_on_nonempty_visible_set ? "true" : "false")
            << "\n";
        out << "# duty_cycle_mode: " << to_string(cfg.mc.duty_cycle_mode) << "\n";
        if (cfg.metric == Metric::coverage_e2e) out << "# e2e_mode: " << to_string(cfg.mc.e2e_mode) << "\n";
    } else {
        out << "# simulation: disabled\n";
    }
    out << "# target_gain: " << to_string(cfg.params.target_gain) << "\n";
    out << "# serving_density: " << to_string(cfg.analysis.serving_density) << "\n";
    out << "# feeder_weights: " << to_string(cfg.analysis.feeder_weights) << "\n";
    out << "# include_empty_interference_term: " << (cfg.analysis.include_empty_interference_term ? "true" : "false")
        << "\n";
    const auto np = assumed_defaults(cfg.params);
    if (!np.empty()) {
        out << "# assumed defaults in use:";
        for (const auto& k : np) out << " " << k;
        out << "\n";
    }
    for (const auto& k : param_keys()) out << "# param " << k.key << " = " << format_number(k.get(cfg.params)) << "\n";
    for (const auto& e : extra) out << "# " << e << "\n";
    return out.str();
}

std::string render_curve(const std::vector<CurveRow>& rows) {
    std::ostringstream out;
    out << curve_header << "\n";
    for (const auto& r : rows) {
        out << format_number(r.sweep_value) << "," << format_number(r.analytic_value) << ","
            << format_number(r.analytic_error_bound) << ",";
        if (r.mc_mean) out << format_number(*r.mc_mean);
        out << ",";
        if (r.mc_std_error) out << format_number(*r.mc_std_error);
        out << "\n";
    }
    return out.str();
}

nlohmann::json parse_config_echo(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(echo_prefix, 0) == 0) return parse_config_text(line.substr(std::string(echo_prefix).size()));
        if (line.empty() || line[0] != '#') break;
    }
    throw ConfigError("CSV has no configuration echo line");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace leocov
