#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leocov/commands.hpp"
#include "leocov/distance.hpp"

namespace py = pybind11;
using namespace leocov;

namespace {

// Parameters arrive as {key: value} in config units (degrees, dB, dBm).
SystemParams make_params(const std::map<std::string, double>& overrides) {
    SystemParams p;
    for (const auto& [k, v] : overrides) set_param(p, k, v);
    p.validate();
    return p;
}

std::map<std::string, double> params_dict(const SystemParams& p) {
    std::map<std::string, double> out;
    for (const auto& k : param_keys()) out[k.key] = get_param(p, k.key);
    return out;
}

TrialConfig make_trials(const std::map<std::string, double>& params, std::int64_t trials, std::uint64_t seed,
                        unsigned threads) {
    TrialConfig c;
    c.params = make_params(params);
    c.trials = trials;
    c.seed = seed;
    c.threads = threads;
    return c;
}

std::vector<double> to_linear(const std::vector<double>& db) {
    std::vector<double> out;
    for (double x : db) out.push_back(db_to_linear(x));
    return out;
}

using Params = std::map<std::string, double>;

}  // namespace

PYBIND11_MODULE(_leocov, m) {
    m.doc() = "Coverage probability and ergodic rate of IoT-over-LEO satellite links";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<MetricResult>(m, "MetricResult")
        .def_readonly("value", &MetricResult::value)
        .def_readonly("numeric_error_bound", &MetricResult::numeric_error_bound)
        .def_readonly("series_terms_used", &MetricResult::series_terms_used)
        .def_readonly("diagnostics", &MetricResult::diagnostics)
        .def("__float__", [](const MetricResult& r) { return r.value; })
        .def("__repr__", [](const MetricResult& r) {
            return "MetricResult(value=" + format_number(r.value) + ", numeric_error_bound=" +
                   format_number(r.numeric_error_bound) + ")";
        });

    py::class_<EstimateWithCI>(m, "Estimate")
        .def_readonly("mean", &EstimateWithCI::mean)
        .def_readonly("std_error", &EstimateWithCI::std_error)
        .def_readonly("trials_used", &EstimateWithCI::trials_used)
        .def_readonly("seed", &EstimateWithCI::seed)
        .def("__repr__", [](const EstimateWithCI& e) {
            return "Estimate(mean=" + format_number(e.mean) + ", std_error=" + format_number(e.std_error) + ")";
        });

    m.def("default_params", [] { return params_dict(SystemParams{}); }, "Default parameters in config units.");
    m.def("assumed_defaults", [](const Params& p) { return assumed_defaults(make_params(p)); },
          py::arg("params") = Params{});

    m.def("coverage_ts", [](double t_db, const Params& p) { return coverage_ts(db_to_linear(t_db), make_params(p)); },
          py::arg("threshold_db"), py::arg("params") = Params{});
    m.def("coverage_ses", [](double t_db, const Params& p) { return coverage_ses(db_to_linear(t_db), make_params(p)); },
          py::arg("threshold_db"), py::arg("params") = Params{});
    m.def("coverage_e2e", [](double t_db, const Params& p) { return coverage_e2e(db_to_linear(t_db), make_params(p)); },
          py::arg("threshold_db"), py::arg("params") = Params{});
    m.def("aer_ts", [](const Params& p) { return aer_ts(make_params(p)); }, py::arg("params") = Params{});
    m.def("aer_ses", [](const Params& p) { return aer_ses(make_params(p)); }, py::arg("params") = Params{});

    auto release = py::call_guard<py::gil_scoped_release>();
    m.def("simulate_coverage_ts",
          [](const std::vector<double>& t_db, const Params& p, std::int64_t trials, std::uint64_t seed, unsigned threads) {
              return simulate_coverage_ts(to_linear(t_db), make_trials(p, trials, seed, threads));
          },
          py::arg("thresholds_db"), py::arg("params") = Params{}, py::arg("trials") = 50000, py::arg("seed") = 1,
          py::arg("threads") = 0, release);
    m.def("simulate_coverage_ses",
          [](const std::vector<double>& t_db, const Params& p, std::int64_t trials, std::uint64_t seed, unsigned threads) {
              return simulate_coverage_ses(to_linear(t_db), make_trials(p, trials, seed, threads));
          },
          py::arg("thresholds_db"), py::arg("params") = Params{}, py::arg("trials") = 50000, py::arg("seed") = 1,
          py::arg("threads") = 0, release);
    m.def("simulate_aer_ts",
          [](const Params& p, std::int64_t trials, std::uint64_t seed, unsigned threads) {
              return simulate_aer_ts(make_trials(p, trials, seed, threads));
          },
          py::arg("params") = Params{}, py::arg("trials") = 50000, py::arg("seed") = 1, py::arg("threads") = 0, release);
    m.def("simulate_aer_ses",
          [](const Params& p, std::int64_t trials, std::uint64_t seed, unsigned threads) {
              return simulate_aer_ses(make_trials(p, trials, seed, threads));
          },
          py::arg("params") = Params{}, py::arg("trials") = 50000, py::arg("seed") = 1, py::arg("threads") = 0, release);

    m.def("r_max_km", [](const Params& p) { return make_params(p).r_max_km(); }, py::arg("params") = Params{});
    m.def("p_zero", [](const Params& p) {
              const auto sp = make_params(p);
              return p_zero(sp.sphere, sp.phi_s(), sp.N_S);
          }, py::arg("params") = Params{});
    m.def("kummer_1f1", [](double a, double b, double x) { return kummer_1f1(a, b, x); }, py::arg("a"), py::arg("b"),
          py::arg("x"));

    // Command layer: overrides use the CLI's KEY=VALUE syntax; returns CSV text.
    m.def("analyze", [](const std::vector<std::string>& overrides, const std::string& config) {
              return cmd_analyze(load_config(config, overrides)).csv;
          }, py::arg("overrides") = std::vector<std::string>{}, py::arg("config") = "", release);
    m.def("simulate", [](const std::vector<std::string>& overrides, const std::string& config) {
              return cmd_simulate(load_config(config, overrides)).csv;
          }, py::arg("overrides") = std::vector<std::string>{}, py::arg("config") = "", release);
    m.def("validate",
          [](const std::vector<std::string>& overrides, double cp_tol, double aer_tol) {
              const auto r = cmd_validate(load_config("", overrides), cp_tol, aer_tol);
              return py::make_tuple(r.pass, r.text, r.csv);
          },
          py::arg("overrides") = std::vector<std::string>{}, py::arg("cp_tol") = 0.05, py::arg("aer_tol") = 0.05);
}
