#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "leocov/commands.hpp"

using namespace leocov;

namespace {

ExperimentConfig quick(std::vector<std::string> overrides = {}) {
    overrides.insert(overrides.begin(), "mc.trials=2000");
    return load_config("", overrides);
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("analyze emits one row per sweep value") {
    const auto r = cmd_analyze(quick());
    CHECK(r.rows.size() == 36);
    const auto lines = data_lines(r.csv);
    CHECK(lines.size() == 37);
    CHECK(lines[0] == curve_header);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].analytic_value <= r.rows[i - 1].analytic_value);
    for (const auto& row : r.rows) CHECK_FALSE(row.mc_mean.has_value());
    CHECK(lines[1].substr(lines[1].size() - 2) == ",,");
}

TEST_CASE("simulate fills the Monte Carlo columns deterministically") {
    auto cfg = quick({"sweep.axis=T_db", "sweep.values=[-10, 0, 10]"});
    cfg.threads = 1;
    const auto a = cmd_simulate(cfg);
    cfg.threads = 3;
    const auto b = cmd_simulate(cfg);
    CHECK(a.csv == b.csv);
    for (const auto& row : a.rows) {
        REQUIRE(row.mc_mean.has_value());
        CHECK(std::abs(*row.mc_mean - row.analytic_value) < 5 * *row.mc_std_error + 0.01);
    }
    CHECK(a.csv.find("# trials: 2000") != std::string::npos);
    CHECK(parse_config_echo(a.csv) == to_json(cfg));
}

TEST_CASE("parameter sweeps use the fixed threshold") {
    auto cfg = quick({"metric=coverage_ts", "threshold_db=5"});
    cfg.sweep = parse_sweep_flag("Rc_km=100:300:100");
    cfg.mc.enabled = false;
    const auto r = cmd_analyze(cfg);
    REQUIRE(r.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        SystemParams p;
        p.Rc_km = 100.0 * (i + 1);
        CHECK(r.rows[i].analytic_value == coverage_ts(db_to_linear(5.0), p).value);
    }
}

TEST_CASE("figure families") {
    CHECK(figure_specs().size() == 9);
    CHECK_THROWS_AS(find_figure("fig12"), ConfigError);
    auto cfg = quick();
    cfg.mc.enabled = false;
    const auto out = cmd_figure("fig3", cfg);
    REQUIRE(out.files.size() == 4);
    CHECK(out.files[0].first == "fig3_Rc_km_100.csv");
    CHECK(out.files[3].first == "fig3.csv");
    CHECK(data_lines(out.files[3].second).size() == 1 + 3 * 36);
    CHECK(data_lines(out.files[3].second)[0] == "family_value," + std::string(curve_header));

    const auto again = cmd_figure("fig3", cfg);
    for (std::size_t i = 0; i < out.files.size(); ++i) CHECK(out.files[i].second == again.files[i].second);

    const auto custom = cmd_figure("fig5", cfg, std::vector<double>{2000.0});
    CHECK(custom.files.size() == 2);
    CHECK(custom.files[0].first == "fig5_N_S_2000.csv");
}

TEST_CASE("validate reports pass and fail against tolerances") {
    const auto cfg = quick();
    const auto loose = cmd_validate(cfg, 1.0, 1.0);
    CHECK(loose.pass);
    CHECK(loose.lines.size() == 5);
    const auto strict = cmd_validate(cfg, 1e-9, 1e-9);
    CHECK_FALSE(strict.pass);
    CHECK(strict.text.find("FAIL") != std::string::npos);
    std::set<std::string> metrics;
    for (const auto& l : strict.lines) metrics.insert(l.metric);
    CHECK(metrics.size() == 5);
}

TEST_CASE("sample dumps per-trial records") {
    const auto cfg = quick({"mc.trials=50"});
    for (const char* link : {"uplink", "feeder", "joint"}) {
        CAPTURE(link);
        CHECK(data_lines(cmd_sample(cfg, link)).size() == 51);
    }
    CHECK_THROWS_AS(cmd_sample(cfg, "sideways"), ConfigError);
}
