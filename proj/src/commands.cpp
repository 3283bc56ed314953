#include "leocov/commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "leocov/analysis.hpp"
#include "leocov/montecarlo.hpp"

namespace leocov {

namespace {

// Runs f(i) for i in [0, n) on up to `threads` workers; results are stored by
// index so the outcome does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F f) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
    std::vector<std::exception_ptr> errors(workers);
    auto body = [&](unsigned w) {
        try {
            for (std::size_t i = w; i < n; i += workers) f(i);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

MetricResult analytic_point(Metric m, double threshold_linear, const SystemParams& p, const AnalysisOptions& o) {
    switch (m) {
        case Metric::coverage_ts: return coverage_ts(threshold_linear, p, o);
        case Metric::coverage_ses: return coverage_ses(threshold_linear, p, o);
        case Metric::coverage_e2e: return coverage_e2e(threshold_linear, p, o);
        case Metric::aer_ts: return aer_ts(p, o);
        case Metric::aer_ses: return aer_ses(p, o);
    }
    throw std::logic_error("unhandled metric");
}

// Monte Carlo estimates for a list of linear thresholds on one parameter set.
std::vector<EstimateWithCI> mc_points(Metric m, const std::vector<double>& thresholds, const TrialConfig& tc,
                                      E2EMode e2e) {
    switch (m) {
        case Metric::coverage_ts: return simulate_coverage_ts(thresholds, tc);
        case Metric::coverage_ses: return simulate_coverage_ses(thresholds, tc);
        case Metric::coverage_e2e: return simulate_coverage_e2e(thresholds, tc, e2e);
        case Metric::aer_ts: return {simulate_aer_ts(tc)};
        case Metric::aer_ses: return {simulate_aer_ses(tc)};
    }
    throw std::logic_error("unhandled metric");
}

}  // namespace

std::vector<CurveRow> evaluate_curve(const ExperimentConfig& cfg, std::vector<std::string>& diagnostics) {
    cfg.validate();
    const bool threshold_sweep = cfg.sweep.axis == threshold_axis;
    const auto& xs = cfg.sweep.values;
    std::vector<CurveRow> rows(xs.size());
    std::vector<std::vector<std::string>> diags(xs.size());

    auto params_at = [&](std::size_t i) {
        SystemParams p = cfg.params;
        if (!threshold_sweep) set_param(p, cfg.sweep.axis, xs[i]);
        p.validate();
        return p;
    };
    auto threshold_at = [&](std::size_t i) { return db_to_linear(threshold_sweep ? xs[i] : cfg.threshold_db); };

    parallel_for(xs.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
        const SystemParams p = params_at(i);
        const MetricResult r = analytic_point(cfg.metric, threshold_at(i), p, cfg.analysis);
        rows[i].sweep_value = xs[i];
        rows[i].analytic_value = r.value;
        rows[i].analytic_error_bound = r.numeric_error_bound;
        for (const auto& d : r.diagnostics) diags[i].push_back(cfg.sweep.axis + "=" + format_number(xs[i]) + ": " + d);
    });
    for (const auto& d : diags) diagnostics.insert(diagnostics.end(), d.begin(), d.end());

    if (!cfg.mc.enabled) return rows;
    if (threshold_sweep) {
        std::vector<double> T;
        for (std::size_t i = 0; i < xs.size(); ++i) T.push_back(threshold_at(i));
        const auto est = mc_points(cfg.metric, T, cfg.trial_config(), cfg.mc.e2e_mode);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            rows[i].mc_mean = est[i].mean;
            rows[i].mc_std_error = est[i].std_error;
        }
    } else {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            TrialConfig tc = cfg.trial_config();
            tc.params = params_at(i);
            const auto est = mc_points(cfg.metric, {threshold_at(i)}, tc, cfg.mc.e2e_mode);
            rows[i].mc_mean = est[0].mean;
            rows[i].mc_std_error = est[0].std_error;
        }
    }
    return rows;
}

namespace {

CurveResult run_curve(ExperimentConfig cfg, const std::string& command) {
    CurveResult out;
    out.rows = evaluate_curve(cfg, out.diagnostics);
    std::vector<std::string> extra;
    for (const auto& d : out.diagnostics) extra.push_back("diagnostic: " + d);
    out.csv = provenance_block(command, cfg, extra) + render_curve(out.rows);
    return out;
}

}  // namespace

CurveResult cmd_analyze(ExperimentConfig cfg) {
    cfg.mc.enabled = false;
    return run_curve(std::move(cfg), "analyze");
}

CurveResult cmd_simulate(ExperimentConfig cfg) {
    cfg.mc.enabled = true;
    return run_curve(std::move(cfg), "simulate");
}

const std::vector<FigureSpec>& figure_specs() {
    static const std::vector<FigureSpec> specs = [] {
        const auto grid = range_values(-20.0, 15.0, 1.0);
        const std::vector<double> radii{100.0, 200.0, 300.0};
        const std::vector<double> beams{15.0, 25.0, 35.0};
        const std::vector<double> fleets{1000.0, 3000.0, 5000.0};
        return std::vector<FigureSpec>{
            {"fig3", Metric::coverage_ts, threshold_axis, grid, "Rc_km", radii, "T-S coverage vs threshold, device-region radius"},
            {"fig4", Metric::coverage_ts, threshold_axis, grid, "phi_s_deg", beams, "T-S coverage vs threshold, beamwidth"},
            {"fig5", Metric::coverage_ts, threshold_axis, grid, "N_S", fleets, "T-S coverage vs threshold, constellation size"},
            {"fig6", Metric::aer_ts, "Rc_km", range_values(100.0, 400.0, 50.0), "phi_s_deg", beams,
             "T-S ergodic rate vs device-region radius, beamwidth"},
            {"fig7", Metric::coverage_ses, threshold_axis, grid, "phi_s_deg", beams, "S-ES coverage vs threshold, beamwidth"},
            {"fig8", Metric::coverage_ses, threshold_axis, grid, "N_S", fleets, "S-ES coverage vs threshold, constellation size"},
            {"fig9", Metric::aer_ses, "p_s_w", range_values(2.0, 20.0, 2.0), "phi_s_deg", beams,
             "S-ES ergodic rate vs satellite transmit power, beamwidth"},
            {"fig10", Metric::coverage_e2e, threshold_axis, grid, "N_S", fleets, "E2E coverage vs threshold, constellation size"},
            {"fig11", Metric::coverage_e2e, threshold_axis, grid, "phi_s_deg", beams, "E2E coverage vs threshold, beamwidth"},
        };
    }();
    return specs;
}

const FigureSpec& find_figure(const std::string& name) {
    for (const auto& f : figure_specs())
        if (f.name == name) return f;
    throw ConfigError("unknown figure '" + name + "' (expected fig3 ... fig11)");
}

FigureOutput cmd_figure(const std::string& name, const ExperimentConfig& base,
                        const std::optional<std::vector<double>>& family_values, bool keep_sweep) {
    const FigureSpec& spec = find_figure(name);
    const std::vector<double> family = family_values ? *family_values : spec.family_values;
    if (family.empty()) throw ConfigError("figure family has no values");

    ExperimentConfig shared = base;
    shared.metric = spec.metric;
    if (!keep_sweep) shared.sweep = {spec.sweep_axis, spec.sweep_values};
    if (shared.sweep.axis == spec.family_key) throw ConfigError("sweep axis and family key must differ");

    FigureOutput out;
    std::ostringstream combined_rows;
    combined_rows << "family_value," << curve_header << "\n";
    for (double fv : family) {
        ExperimentConfig cfg = shared;
        set_param(cfg.params, spec.family_key, fv);
        std::vector<std::string> diags;
        const auto rows = evaluate_curve(cfg, diags);
        std::vector<std::string> extra{"figure: " + spec.name + " (" + spec.caption + ")",
                                       "family: " + spec.family_key + " = " + format_number(fv)};
        for (const auto& d : diags) extra.push_back("diagnostic: " + d);
        out.diagnostics.insert(out.diagnostics.end(), diags.begin(), diags.end());
        out.files.emplace_back(spec.name + "_" + spec.family_key + "_" + format_number(fv) + ".csv",
                               provenance_block("figure", cfg, extra) + render_curve(rows));
        const std::string body = render_curve(rows);
        std::istringstream lines(body);
        std::string line;
        std::getline(lines, line);  // header
        while (std::getline(lines, line)) combined_rows << format_number(fv) << "," << line << "\n";
    }
    std::ostringstream fam;
    fam << "family: " << spec.family_key << " =";
    for (double fv : family) fam << " " << format_number(fv);
    out.files.emplace_back(spec.name + ".csv",
                           provenance_block("figure", shared, {"figure: " + spec.name + " (" + spec.caption + ")", fam.str()}) +
                               combined_rows.str());
    return out;
}

std::vector<double> validation_grid_db() { return range_values(-20.0, 15.0, 2.5); }

ValidationReport cmd_validate(const ExperimentConfig& cfg_in, double cp_tolerance, double aer_tolerance,
                              const std::vector<double>& grid_db) {
    ExperimentConfig cfg = cfg_in;
    cfg.mc.enabled = true;
    cfg.validate();
    const SystemParams& p = cfg.params;
    const TrialConfig tc = cfg.trial_config();
    std::vector<double> T;
    for (double db : grid_db) T.push_back(db_to_linear(db));

    const std::size_t n = T.size();
    std::vector<MetricResult> a_ts(n), a_ses(n);
    MetricResult a_rate_ts, a_rate_ses;
    parallel_for(2 * n + 2, resolve_threads(cfg.threads), [&](std::size_t i) {
        if (i < n) a_ts[i] = coverage_ts(T[i], p, cfg.analysis);
        else if (i < 2 * n) a_ses[i - n] = coverage_ses(T[i - n], p, cfg.analysis);
        else if (i == 2 * n) a_rate_ts = aer_ts(p, cfg.analysis);
        else a_rate_ses = aer_ses(p, cfg.analysis);
    });

    const auto up = run_uplink_trials(tc);
    const auto fe = run_feeder_trials(tc);
    const auto m_ts = coverage_from_uplink(up, T, tc);
    const auto m_ses = coverage_from_feeder(fe, T, tc);
    std::vector<EstimateWithCI> m_e2e;
    if (cfg.mc.e2e_mode == E2EMode::product) {
        for (std::size_t i = 0; i < n; ++i) m_e2e.push_back(product_estimate(m_ts[i], m_ses[i]));
    } else {
        m_e2e = simulate_coverage_e2e(T, tc, E2EMode::joint);
    }
    const auto m_rate_ts = rate_from_uplink(up, tc);
    const auto m_rate_ses = rate_from_feeder(fe, tc);

    ValidationReport rep;
    std::ostringstream csv;
    csv << provenance_block("validate", cfg,
                            {"cp_tolerance: " + format_number(cp_tolerance), "aer_tolerance: " + format_number(aer_tolerance)});
    csv << "metric," << curve_header << "\n";
    auto row = [&](const std::string& metric, double x, double a, double eb, const EstimateWithCI& m) {
        csv << metric << "," << format_number(x) << "," << format_number(a) << "," << format_number(eb) << ","
            << format_number(m.mean) << "," << format_number(m.std_error) << "\n";
    };

    auto cp_line = [&](const std::string& metric, auto analytic_at, const std::vector<EstimateWithCI>& mc) {
        double gap = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const MetricResult a = analytic_at(i);
            gap = std::max(gap, std::abs(a.value - mc[i].mean));
            row(metric, grid_db[i], a.value, a.numeric_error_bound, mc[i]);
        }
        rep.lines.push_back({metric, "max_abs_gap", gap, cp_tolerance, gap <= cp_tolerance});
    };
    cp_line("coverage_ts", [&](std::size_t i) { return a_ts[i]; }, m_ts);
    cp_line("coverage_ses", [&](std::size_t i) { return a_ses[i]; }, m_ses);
    cp_line("coverage_e2e", [&](std::size_t i) {
        MetricResult r;
        r.value = a_ts[i].value * a_ses[i].value;
        r.numeric_error_bound = a_ses[i].value * a_ts[i].numeric_error_bound + a_ts[i].value * a_ses[i].numeric_error_bound;
        return r;
    }, m_e2e);

    auto rate_line = [&](const std::string& metric, const MetricResult& a, const EstimateWithCI& m) {
        const double gap = std::abs(a.value - m.mean) / std::max(std::abs(m.mean), 1e-300);
        row(metric, 0.0, a.value, a.numeric_error_bound, m);
        rep.lines.push_back({metric, "rel_gap", gap, aer_tolerance, gap <= aer_tolerance});
    };
    rate_line("aer_ts", a_rate_ts, m_rate_ts);
    rate_line("aer_ses", a_rate_ses, m_rate_ses);

    rep.pass = std::all_of(rep.lines.begin(), rep.lines.end(), [](const ValidationLine& l) { return l.pass; });
    std::ostringstream text;
    text << "validation: " << tc.trials << " trials, seed " << tc.seed << ", grid " << format_number(grid_db.front())
         << ".." << format_number(grid_db.back()) << " dB (" << n << " points)\n";
    for (const auto& l : rep.lines)
        text << "  " << l.metric << " " << l.measure << " = " << format_number(l.gap) << " (tolerance "
             << format_number(l.tolerance) << ") " << (l.pass ? "PASS" : "FAIL") << "\n";
    text << (rep.pass ? "PASS" : "FAIL") << "\n";
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

std::string cmd_sample(const ExperimentConfig& cfg_in, const std::string& link) {
    ExperimentConfig cfg = cfg_in;
    cfg.mc.enabled = true;
    cfg.validate();
    const TrialConfig tc = cfg.trial_config();
    std::ostringstream out;
    out << provenance_block("sample", cfg, {"link: " + link});
    if (link == "uplink") {
        out << "trial,served,serving_distance_km,interferers,signal_w,interference_w,noise_w\n";
        const auto t = run_uplink_trials(tc);
        for (std::size_t i = 0; i < t.size(); ++i)
            out << i << "," << (t[i].served ? 1 : 0) << "," << format_number(t[i].serving_distance_km) << ","
                << t[i].interferers << "," << format_number(t[i].signal_w) << "," << format_number(t[i].interference_w)
                << "," << format_number(tc.params.sigma2_w) << "\n";
    } else if (link == "feeder") {
        out << "trial,visible,attempts,target_distance_km,interferers,signal_w,interference_w,noise_w\n";
        const auto t = run_feeder_trials(tc);
        for (std::size_t i = 0; i < t.size(); ++i)
            out << i << "," << t[i].visible << "," << t[i].attempts << "," << format_number(t[i].target_distance_km) << ","
                << t[i].interferers << "," << format_number(t[i].signal_w) << "," << format_number(t[i].interference_w)
                << "," << format_number(tc.params.sigma2_w) << "\n";
    } else if (link == "joint") {
        out << "trial,served,serving_distance_km,uplink_interferers,uplink_signal_w,uplink_interference_w,"
               "feeder_interferers,feeder_signal_w,feeder_interference_w\n";
        const auto t = run_joint_trials(tc);
        for (std::size_t i = 0; i < t.size(); ++i)
            out << i << "," << (t[i].uplink.served ? 1 : 0) << "," << format_number(t[i].uplink.serving_distance_km) << ","
                << t[i].uplink.interferers << "," << format_number(t[i].uplink.signal_w) << ","
                << format_number(t[i].uplink.interference_w) << "," << t[i].feeder.interferers << ","
                << format_number(t[i].feeder.signal_w) << "," << format_number(t[i].feeder.interference_w) << "\n";
    } else {
        throw ConfigError("unknown link '" + link + "' (expected uplink, feeder or joint)");
    }
    return out.str();
}

}  // namespace leocov
