// leocov: analytic and Monte Carlo coverage/rate curves for IoT-over-LEO links.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leocov/commands.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string metric;
    std::string sweep;
    std::vector<std::string> sets;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<unsigned> threads;
    std::optional<double> threshold_db;
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--config", f.config, "JSON config file (comments allowed)")->check(CLI::ExistingFile);
    app->add_option("--metric", f.metric, "coverage_ts, coverage_ses, coverage_e2e, aer_ts or aer_ses");
    app->add_option("--sweep", f.sweep, "KEY=LO:HI:STEP (KEY is T_db or a parameter key)");
    app->add_option("--set", f.sets, "KEY=VALUE override, repeatable")->take_all();
    app->add_option("--out", f.out, "output path (directory for figure)");
    app->add_option("--seed", f.seed, "Monte Carlo seed");
    app->add_option("--trials", f.trials, "Monte Carlo trials");
    app->add_option("--threads", f.threads, "worker threads (default: LEOCOV_THREADS or all cores)");
    app->add_option("--threshold-db", f.threshold_db, "fixed threshold when sweeping a parameter");
}

leocov::ExperimentConfig build_config(const CommonFlags& f) {
    std::vector<std::string> overrides = f.sets;
    if (!f.metric.empty()) overrides.push_back("metric=\"" + f.metric + "\"");
    if (f.seed) overrides.push_back("mc.seed=" + std::to_string(*f.seed));
    if (f.trials) overrides.push_back("mc.trials=" + std::to_string(*f.trials));
    if (f.threshold_db) overrides.push_back("threshold_db=" + leocov::format_number(*f.threshold_db));
    leocov::ExperimentConfig cfg = leocov::load_config(f.config, overrides);
    if (!f.sweep.empty()) cfg.sweep = leocov::parse_sweep_flag(f.sweep);
    if (!f.out.empty()) cfg.output = f.out;
    if (f.threads) cfg.threads = *f.threads;
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        leocov::write_text_file(path, text);
    }
}

void report_diagnostics(const std::vector<std::string>& diags) {
    for (const auto& d : diags) std::cerr << "leocov: " << d << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage probability and ergodic rate of IoT-over-LEO satellite links"};
    app.require_subcommand(1);

    CommonFlags analyze_flags, simulate_flags, figure_flags, validate_flags, sample_flags;
    auto* analyze = app.add_subcommand("analyze", "analytic curve");
    add_common(analyze, analyze_flags);
    auto* simulate = app.add_subcommand("simulate", "analytic curve with Monte Carlo columns");
    add_common(simulate, simulate_flags);

    auto* figure = app.add_subcommand("figure", "curve families for fig3 ... fig11");
    add_common(figure, figure_flags);
    std::string figure_name;
    std::vector<double> family;
    bool analytic_only = false;
    figure->add_option("name", figure_name, "figure name")->required();
    figure->add_option("--family", family, "family values replacing the defaults")->delimiter(',');
    figure->add_flag("--analytic-only", analytic_only, "skip the Monte Carlo columns");

    auto* validate = app.add_subcommand("validate", "analytic vs Monte Carlo report");
    add_common(validate, validate_flags);
    double cp_tol = 0.05, aer_tol = 0.05;
    validate->add_option("--cp-tol", cp_tol, "absolute coverage tolerance")->check(CLI::PositiveNumber);
    validate->add_option("--aer-tol", aer_tol, "relative rate tolerance")->check(CLI::PositiveNumber);

    auto* sample = app.add_subcommand("sample", "raw per-trial records");
    add_common(sample, sample_flags);
    std::string link = "uplink";
    sample->add_option("--link", link, "uplink, feeder or joint")->check(CLI::IsMember({"uplink", "feeder", "joint"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) {
            auto cfg = build_config(analyze_flags);
            auto r = leocov::cmd_analyze(cfg);
            report_diagnostics(r.diagnostics);
            emit(cfg.output, r.csv);
        } else if (simulate->parsed()) {
            auto cfg = build_config(simulate_flags);
            auto r = leocov::cmd_simulate(cfg);
            report_diagnostics(r.diagnostics);
            emit(cfg.output, r.csv);
        } else if (figure->parsed()) {
            // the figure owns the sweep unless one is given explicitly
            auto cfg = build_config(figure_flags);
            if (analytic_only) cfg.mc.enabled = false;
            std::optional<std::vector<double>> fam;
            if (!family.empty()) fam = family;
            auto out = leocov::cmd_figure(figure_name, cfg, fam, !figure_flags.sweep.empty());
            report_diagnostics(out.diagnostics);
            const std::filesystem::path dir = cfg.output.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.output);
            std::filesystem::create_directories(dir);
            for (const auto& [name, text] : out.files) {
                leocov::write_text_file((dir / name).string(), text);
                std::cout << (dir / name).string() << "\n";
            }
        } else if (validate->parsed()) {
            auto cfg = build_config(validate_flags);
            auto rep = leocov::cmd_validate(cfg, cp_tol, aer_tol);
            std::cout << rep.text;
            if (!cfg.output.empty()) leocov::write_text_file(cfg.output, rep.csv);
            return rep.pass ? 0 : 1;
        } else if (sample->parsed()) {
            auto cfg = build_config(sample_flags);
            emit(cfg.output, leocov::cmd_sample(cfg, link));
        }
    } catch (const leocov::ConfigError& e) {
        std::cerr << "leocov: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "leocov: invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "leocov: error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
