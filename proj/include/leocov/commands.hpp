#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leocov/config.hpp"
#include "leocov/report.hpp"

namespace leocov {

struct CurveResult {
    std::vector<CurveRow> rows;
    std::vector<std::string> diagnostics;
    std::string csv;
};

// Analytic curve only (mc fields left empty).
CurveResult cmd_analyze(ExperimentConfig cfg);
// Analytic and Monte Carlo columns.
CurveResult cmd_simulate(ExperimentConfig cfg);

std::vector<CurveRow> evaluate_curve(const ExperimentConfig& cfg, std::vector<std::string>& diagnostics);

struct FigureSpec {
    std::string name;
    Metric metric;
    std::string sweep_axis;
    std::vector<double> sweep_values;
    std::string family_key;
    std::vector<double> family_values;
    std::string caption;
};

const std::vector<FigureSpec>& figure_specs();
const FigureSpec& find_figure(const std::string& name);

struct FigureOutput {
    std::vector<std::pair<std::string, std::string>> files;  // file name, contents
    std::vector<std::string> diagnostics;
};

// `base` supplies parameters and Monte Carlo settings; its metric and sweep
// are replaced by the figure's unless `keep_sweep` is set.
FigureOutput cmd_figure(const std::string& name, const ExperimentConfig& base,
                        const std::optional<std::vector<double>>& family_values = std::nullopt, bool keep_sweep = false);

struct ValidationLine {
    std::string metric;
    std::string measure;  // max_abs_gap or rel_gap
    double gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationLine> lines;
    bool pass = false;
    std::string text;
    std::string csv;
};

std::vector<double> validation_grid_db();
ValidationReport cmd_validate(const ExperimentConfig& cfg, double cp_tolerance = 0.05, double aer_tolerance = 0.05,
                              const std::vector<double>& grid_db = validation_grid_db());

// Raw per-trial records; link is uplink, feeder or joint.
std::string cmd_sample(const ExperimentConfig& cfg, const std::string& link);

}  // namespace leocov
