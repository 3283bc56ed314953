#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "leocov/analysis.hpp"
#include "leocov/montecarlo.hpp"
#include "leocov/params.hpp"

namespace leocov {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Metric { coverage_ts, coverage_ses, coverage_e2e, aer_ts, aer_ses };

const char* to_string(Metric m);
Metric metric_from_string(const std::string& s);
bool is_coverage(Metric m);

// Name of the threshold axis; any other axis must be a parameter key.
inline constexpr const char* threshold_axis = "T_db";

struct SweepSpec {
    std::string axis = threshold_axis;
    std::vector<double> values;
};

struct McSettings {
    bool enabled = true;
    std::int64_t trials = 50000;
    std::uint64_t seed = 1;
    NoiseMode noise_in_sinr = NoiseMode::automatic;
    bool condition_on_nonempty_visible_set = false;
    DutyCycleMode duty_cycle_mode = DutyCycleMode::power_scaling;
    E2EMode e2e_mode = E2EMode::product;
};

struct ExperimentConfig {
    SystemParams params{};
    Metric metric = Metric::coverage_ts;
    SweepSpec sweep{};
    double threshold_db = 0.0;  // fixed threshold when sweeping a parameter
    McSettings mc{};
    AnalysisOptions analysis{};
    std::string output;
    unsigned threads = 0;  // not echoed: results never depend on it

    TrialConfig trial_config() const;
    void validate() const;
};

// One entry per configurable system parameter, in config units (dB, degrees).
struct ParamKey {
    const char* key;
    const char* unit;
    bool published;  // false for assumed defaults
    double (*get)(const SystemParams&);
    void (*set)(SystemParams&, double);
};

const std::vector<ParamKey>& param_keys();
const ParamKey* find_param_key(const std::string& key);
double get_param(const SystemParams& p, const std::string& key);
void set_param(SystemParams& p, const std::string& key, double value);

// lo, lo+step, ... up to hi (inclusive, with a relative slack of 1e-9 steps)
std::vector<double> range_values(double lo, double hi, double step);
SweepSpec parse_sweep_flag(const std::string& flag);  // KEY=LO:HI:STEP

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig from_json(const nlohmann::json& j);
// JSON with // and /* */ comments allowed.
nlohmann::json read_config_file(const std::string& path);
nlohmann::json parse_config_text(const std::string& text);
// KEY=VALUE where KEY is a parameter key, a top-level key or section.key.
void apply_override(nlohmann::json& j, const std::string& assignment);

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

// Keys still at their assumed default values.
std::vector<std::string> assumed_defaults(const SystemParams& p);

}  // namespace leocov
