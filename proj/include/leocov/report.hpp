#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leocov/config.hpp"

namespace leocov {

struct CurveRow {
    double sweep_value = 0.0;
    double analytic_value = 0.0;
    double analytic_error_bound = 0.0;
    std::optional<double> mc_mean;
    std::optional<double> mc_std_error;
};

inline constexpr const char* curve_header = "sweep_value,analytic_value,analytic_error_bound,mc_mean,mc_std_error";

// Fixed "%.10g" rendering; refuses NaN and infinities.
std::string format_number(double x);

// "# " comment block echoing the configuration, seed and provenance flags.
std::string provenance_block(const std::string& command, const ExperimentConfig& cfg,
                             const std::vector<std::string>& extra = {});
std::string render_curve(const std::vector<CurveRow>& rows);

// Recovers the configuration echoed by provenance_block from CSV text.
nlohmann::json parse_config_echo(const std::string& csv_text);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace leocov
