#include "leocov/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace leocov {

using nlohmann::json;

const char* to_string(Metric m) {
    switch (m) {
        case Metric::coverage_ts: return "coverage_ts";
        case Metric::coverage_ses: return "coverage_ses";
        case Metric::coverage_e2e: return "coverage_e2e";
        case Metric::aer_ts: return "aer_ts";
        case Metric::aer_ses: return "aer_ses";
    }
    return "coverage_ts";
}

Metric metric_from_string(const std::string& s) {
    for (Metric m : {Metric::coverage_ts, Metric::coverage_ses, Metric::coverage_e2e, Metric::aer_ts, Metric::aer_ses})
        if (s == to_string(m)) return m;
    throw ConfigError("unknown metric '" + s + "' (expected coverage_ts, coverage_ses, coverage_e2e, aer_ts or aer_ses)");
}

bool is_coverage(Metric m) { return m != Metric::aer_ts && m != Metric::aer_ses; }

namespace {

// Unit conversions are rounded to 12 significant digits on the way out so the
// echoed config is a fixed point of parse -> echo.
double tidy(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

unsigned as_count(double v, const char* key) {
    if (!(v >= 1.0) || std::floor(v) != v || v > 4.0e9)
        throw ConfigError(std::string("parameter '") + key + "' must be a positive integer");
    return static_cast<unsigned>(v);
}

const std::vector<ParamKey> table = {
    {"earth_radius_km", "km", true, [](const SystemParams& p) { return p.sphere.earth_radius_km; },
     [](SystemParams& p, double v) { p.sphere.earth_radius_km = v; }},
    {"H_km", "km", true, [](const SystemParams& p) { return p.sphere.satellite_altitude_km; },
     [](SystemParams& p, double v) { p.sphere.satellite_altitude_km = v; }},
    {"Rc_km", "km", true, [](const SystemParams& p) { return p.Rc_km; }, [](SystemParams& p, double v) { p.Rc_km = v; }},
    {"N_T", "count", true, [](const SystemParams& p) { return static_cast<double>(p.N_T); },
     [](SystemParams& p, double v) { p.N_T = as_count(v, "N_T"); }},
    {"N_S", "count", true, [](const SystemParams& p) { return static_cast<double>(p.N_S); },
     [](SystemParams& p, double v) { p.N_S = as_count(v, "N_S"); }},
    {"phi_s_deg", "deg", true, [](const SystemParams& p) { return tidy(rad_to_deg(p.antenna.satellite_beamwidth)); },
     [](SystemParams& p, double v) { p.antenna.satellite_beamwidth = deg_to_rad(v); }},
    {"nakagami_m", "count", true, [](const SystemParams& p) { return static_cast<double>(p.nakagami.m); },
     [](SystemParams& p, double v) { p.nakagami.m = static_cast<int>(as_count(v, "nakagami_m")); }},
    {"sr_cbar", "W", true, [](const SystemParams& p) { return p.sr.cbar; }, [](SystemParams& p, double v) { p.sr.cbar = v; }},
    {"sr_q", "", true, [](const SystemParams& p) { return p.sr.q; }, [](SystemParams& p, double v) { p.sr.q = v; }},
    {"sr_omega", "W", true, [](const SystemParams& p) { return p.sr.omega; },
     [](SystemParams& p, double v) { p.sr.omega = v; }},
    {"sigma2_dbm", "dBm", true, [](const SystemParams& p) { return tidy(watts_to_dbm(p.sigma2_w)); },
     [](SystemParams& p, double v) { p.sigma2_w = dbm_to_watts(v); }},
    {"alpha1", "", true, [](const SystemParams& p) { return p.alpha1; }, [](SystemParams& p, double v) { p.alpha1 = v; }},
    {"alpha2", "", true, [](const SystemParams& p) { return p.alpha2; }, [](SystemParams& p, double v) { p.alpha2 = v; }},
    {"f1_hz", "Hz", false, [](const SystemParams& p) { return p.f1_hz; }, [](SystemParams& p, double v) { p.f1_hz = v; }},
    {"f2_hz", "Hz", false, [](const SystemParams& p) { return p.f2_hz; }, [](SystemParams& p, double v) { p.f2_hz = v; }},
    {"p_t_w", "W", false, [](const SystemParams& p) { return p.p_t_w; }, [](SystemParams& p, double v) { p.p_t_w = v; }},
    {"p_s_w", "W", false, [](const SystemParams& p) { return p.p_s_w; }, [](SystemParams& p, double v) { p.p_s_w = v; }},
    {"p_n_w", "W", false, [](const SystemParams& p) { return p.p_n_w; }, [](SystemParams& p, double v) { p.p_n_w = v; }},
    {"duty_cycle", "", false, [](const SystemParams& p) { return p.duty_cycle; },
     [](SystemParams& p, double v) { p.duty_cycle = v; }},
    {"G_t_db", "dBi", false, [](const SystemParams& p) { return tidy(linear_to_db(p.antenna.device_main_gain)); },
     [](SystemParams& p, double v) { p.antenna.device_main_gain = db_to_linear(v); }},
    {"g_t_db", "dBi", false, [](const SystemParams& p) { return tidy(linear_to_db(p.antenna.device_side_gain)); },
     [](SystemParams& p, double v) { p.antenna.device_side_gain = db_to_linear(v); }},
    {"phi_t_deg", "deg", false, [](const SystemParams& p) { return tidy(rad_to_deg(p.antenna.device_threshold_angle)); },
     [](SystemParams& p, double v) { p.antenna.device_threshold_angle = deg_to_rad(v); }},
    {"G_es_db", "dBi", false, [](const SystemParams& p) { return tidy(linear_to_db(p.antenna.earth_station_gain)); },
     [](SystemParams& p, double v) { p.antenna.earth_station_gain = db_to_linear(v); }},
};

template <class T>
T get_as(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("key '" + path + "' has the wrong type (" + j.dump() + ")");
    }
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
    if (!obj.is_object()) throw ConfigError("key '" + prefix + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key())) throw ConfigError("unknown key '" + prefix + (prefix.empty() ? "" : ".") + it.key() + "'");
}

}  // namespace

const std::vector<ParamKey>& param_keys() { return table; }

const ParamKey* find_param_key(const std::string& key) {
    for (const auto& k : table)
        if (key == k.key) return &k;
    return nullptr;
}

double get_param(const SystemParams& p, const std::string& key) {
    const ParamKey* k = find_param_key(key);
    if (!k) throw ConfigError("unknown parameter '" + key + "'");
    return k->get(p);
}

void set_param(SystemParams& p, const std::string& key, double value) {
    const ParamKey* k = find_param_key(key);
    if (!k) throw ConfigError("unknown parameter '" + key + "'");
    if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
    k->set(p, value);
}

std::vector<double> range_values(double lo, double hi, double step) {
    if (!(step > 0.0)) throw ConfigError("sweep step must be positive");
    if (!(hi >= lo)) throw ConfigError("sweep upper bound is below the lower bound");
    const double n = std::floor((hi - lo) / step + 1e-9);
    if (n > 1e6) throw ConfigError("sweep has more than a million points");
    std::vector<double> v;
    for (int i = 0; i <= static_cast<int>(n); ++i) {
        double x = lo + i * step;
        if (std::abs(x) < 1e-12 * step) x = 0.0;
        v.push_back(x);
    }
    return v;
}

SweepSpec parse_sweep_flag(const std::string& flag) {
    const auto eq = flag.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("sweep must look like KEY=LO:HI:STEP, got '" + flag + "'");
    SweepSpec s;
    s.axis = flag.substr(0, eq);
    if (s.axis != threshold_axis && !find_param_key(s.axis))
        throw ConfigError("unknown sweep axis '" + s.axis + "' (expected T_db or a parameter key)");
    std::stringstream ss(flag.substr(eq + 1));
    std::string part;
    std::vector<double> nums;
    while (std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            nums.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError("sweep bound '" + part + "' is not a number");
        }
    }
    if (nums.size() != 3) throw ConfigError("sweep must look like KEY=LO:HI:STEP, got '" + flag + "'");
    s.values = range_values(nums[0], nums[1], nums[2]);
    return s;
}

TrialConfig ExperimentConfig::trial_config() const {
    TrialConfig t;
    t.params = params;
    t.trials = mc.trials;
    t.seed = mc.seed;
    t.noise_in_sinr = mc.noise_in_sinr;
    t.condition_on_nonempty_visible_set = mc.condition_on_nonempty_visible_set;
    t.duty_cycle_mode = mc.duty_cycle_mode;
    t.threads = threads;
    return t;
}

void ExperimentConfig::validate() const {
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid parameters: ") + e.what());
    }
    if (sweep.values.empty()) throw ConfigError("sweep has no values");
    if (sweep.axis == threshold_axis) {
        if (!is_coverage(metric))
            throw ConfigError(std::string("metric ") + to_string(metric) + " has no threshold; sweep a parameter instead");
    } else if (!find_param_key(sweep.axis)) {
        throw ConfigError("unknown sweep axis '" + sweep.axis + "'");
    }
    for (double v : sweep.values)
        if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
    if (mc.trials < 1) throw ConfigError("mc.trials must be >= 1");
}

json to_json(const ExperimentConfig& cfg) {
    json params = json::object();
    for (const auto& k : table) params[k.key] = k.get(cfg.params);
    json j;
    j["params"] = params;
    j["metric"] = to_string(cfg.metric);
    j["sweep"] = {{"axis", cfg.sweep.axis}, {"values", cfg.sweep.values}};
    j["threshold_db"] = cfg.threshold_db;
    j["mc"] = {{"enabled", cfg.mc.enabled},
               {"trials", cfg.mc.trials},
               {"seed", cfg.mc.seed},
               {"noise_in_sinr", to_string(cfg.mc.noise_in_sinr)},
               {"condition_on_nonempty_visible_set", cfg.mc.condition_on_nonempty_visible_set},
               {"duty_cycle_mode", to_string(cfg.mc.duty_cycle_mode)},
               {"e2e_mode", to_string(cfg.mc.e2e_mode)}};
    j["model"] = {{"target_gain", to_string(cfg.params.target_gain)},
                  {"include_empty_interference_term", cfg.analysis.include_empty_interference_term},
                  {"serving_density", to_string(cfg.analysis.serving_density)},
                  {"feeder_weights", to_string(cfg.analysis.feeder_weights)}};
    j["output"] = cfg.output;
    return j;
}

ExperimentConfig from_json(const json& j) {
    reject_unknown(j, {"params", "metric", "sweep", "threshold_db", "mc", "model", "output"}, "");
    ExperimentConfig cfg;
    if (j.contains("params")) {
        const json& p = j["params"];
        if (!p.is_object()) throw ConfigError("key 'params' must be an object");
        for (auto it = p.begin(); it != p.end(); ++it) {
            if (!find_param_key(it.key())) throw ConfigError("unknown key 'params." + it.key() + "'");
            if (!it.value().is_number()) throw ConfigError("key 'params." + it.key() + "' must be a number");
            set_param(cfg.params, it.key(), it.value().get<double>());
        }
    }
    if (j.contains("metric")) cfg.metric = metric_from_string(get_as<std::string>(j["metric"], "metric"));
    if (j.contains("threshold_db")) cfg.threshold_db = get_as<double>(j["threshold_db"], "threshold_db");
    if (j.contains("output")) cfg.output = get_as<std::string>(j["output"], "output");
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        reject_unknown(s, {"axis", "values", "lo", "hi", "step"}, "sweep");
        cfg.sweep.axis = s.contains("axis") ? get_as<std::string>(s["axis"], "sweep.axis") : threshold_axis;
        const bool has_range = s.contains("lo") || s.contains("hi") || s.contains("step");
        if (s.contains("values") && has_range) throw ConfigError("sweep takes either 'values' or 'lo'/'hi'/'step', not both");
        if (s.contains("values")) {
            cfg.sweep.values = get_as<std::vector<double>>(s["values"], "sweep.values");
        } else if (has_range) {
            if (!s.contains("lo") || !s.contains("hi") || !s.contains("step"))
                throw ConfigError("sweep range needs all of 'lo', 'hi' and 'step'");
            cfg.sweep.values = range_values(get_as<double>(s["lo"], "sweep.lo"), get_as<double>(s["hi"], "sweep.hi"),
                                            get_as<double>(s["step"], "sweep.step"));
        } else {
            cfg.sweep.values.clear();
        }
    } else {
        cfg.sweep.values = range_values(-20.0, 15.0, 1.0);
    }
    if (j.contains("mc")) {
        const json& m = j["mc"];
        reject_unknown(m, {"enabled", "trials", "seed", "noise_in_sinr", "condition_on_nonempty_visible_set",
                           "duty_cycle_mode", "e2e_mode"},
                       "mc");
        if (m.contains("enabled")) cfg.mc.enabled = get_as<bool>(m["enabled"], "mc.enabled");
        if (m.contains("trials")) cfg.mc.trials = get_as<std::int64_t>(m["trials"], "mc.trials");
        if (m.contains("seed")) cfg.mc.seed = get_as<std::uint64_t>(m["seed"], "mc.seed");
        if (m.contains("noise_in_sinr")) {
            const json& n = m["noise_in_sinr"];
            cfg.mc.noise_in_sinr = n.is_boolean() ? (n.get<bool>() ? NoiseMode::on : NoiseMode::off)
                                                  : noise_mode_from_string(get_as<std::string>(n, "mc.noise_in_sinr"));
        }
        if (m.contains("condition_on_nonempty_visible_set"))
            cfg.mc.condition_on_nonempty_visible_set =
                get_as<bool>(m["condition_on_nonempty_visible_set"], "mc.condition_on_nonempty_visible_set");
        if (m.contains("duty_cycle_mode"))
            cfg.mc.duty_cycle_mode = duty_cycle_mode_from_string(get_as<std::string>(m["duty_cycle_mode"], "mc.duty_cycle_mode"));
        if (m.contains("e2e_mode")) cfg.mc.e2e_mode = e2e_mode_from_string(get_as<std::string>(m["e2e_mode"], "mc.e2e_mode"));
    }
    if (j.contains("model")) {
        const json& m = j["model"];
        reject_unknown(m, {"target_gain", "include_empty_interference_term", "serving_density", "feeder_weights"}, "model");
        if (m.contains("target_gain"))
            cfg.params.target_gain = target_gain_from_string(get_as<std::string>(m["target_gain"], "model.target_gain"));
        if (m.contains("include_empty_interference_term"))
            cfg.analysis.include_empty_interference_term =
                get_as<bool>(m["include_empty_interference_term"], "model.include_empty_interference_term");
        if (m.contains("serving_density"))
            cfg.analysis.serving_density =
                serving_density_from_string(get_as<std::string>(m["serving_density"], "model.serving_density"));
        if (m.contains("feeder_weights"))
            cfg.analysis.feeder_weights = feeder_weights_from_string(get_as<std::string>(m["feeder_weights"], "model.feeder_weights"));
    }
    return cfg;
}

json parse_config_text(const std::string& text) {
    try {
        return json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

json read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like KEY=VALUE, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
        const std::string section = key.substr(0, dot);
        const std::string sub = key.substr(dot + 1);
        if (section != "params" && section != "mc" && section != "model" && section != "sweep")
            throw ConfigError("unknown key '" + key + "'");
        j[section][sub] = value;
    } else if (find_param_key(key)) {
        j["params"][key] = value;
    } else if (key == "metric" || key == "threshold_db" || key == "output") {
        j[key] = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    json j = to_json(ExperimentConfig{});
    j["sweep"] = {{"axis", threshold_axis}, {"values", range_values(-20.0, 15.0, 1.0)}};
    if (!path.empty()) {
        json file = read_config_file(path);
        if (!file.is_object()) throw ConfigError("config root must be an object");
        if (file.contains("sweep")) {
            j["sweep"] = file["sweep"];
            file.erase("sweep");
        }
        j.merge_patch(file);
    }
    for (const auto& o : overrides) {
        if (o.rfind("sweep.", 0) == 0) j["sweep"].erase("values");
        apply_override(j, o);
    }
    ExperimentConfig cfg = from_json(j);
    cfg.validate();
    return cfg;
}

std::vector<std::string> assumed_defaults(const SystemParams& p) {
    std::vector<std::string> out;
    const SystemParams d{};
    for (const auto& k : table)
        if (!k.published && k.get(p) == k.get(d)) out.push_back(k.key);
    return out;
}

}  // namespace leocov
