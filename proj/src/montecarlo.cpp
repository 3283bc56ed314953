#include "leocov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "leocov/channel.hpp"
#include "leocov/distance.hpp"
#include "leocov/numerics.hpp"

namespace leocov {

const char* to_string(NoiseMode m) {
    switch (m) {
        case NoiseMode::automatic: return "auto";
        case NoiseMode::on: return "on";
        case NoiseMode::off: return "off";
    }
    return "auto";
}

const char* to_string(DutyCycleMode m) { return m == DutyCycleMode::power_scaling ? "power_scaling" : "thinning"; }
const char* to_string(E2EMode m) { return m == E2EMode::product ? "product" : "joint"; }

NoiseMode noise_mode_from_string(const std::string& s) {
    if (s == "auto") return NoiseMode::automatic;
    if (s == "on" || s == "true") return NoiseMode::on;
    if (s == "off" || s == "false") return NoiseMode::off;
    throw DomainError("unknown noise mode '" + s + "' (expected auto, on or off)");
}

DutyCycleMode duty_cycle_mode_from_string(const std::string& s) {
    if (s == "power_scaling") return DutyCycleMode::power_scaling;
    if (s == "thinning") return DutyCycleMode::thinning;
    throw DomainError("unknown duty cycle mode '" + s + "' (expected power_scaling or thinning)");
}

E2EMode e2e_mode_from_string(const std::string& s) {
    if (s == "product") return E2EMode::product;
    if (s == "joint") return E2EMode::joint;
    throw DomainError("unknown e2e mode '" + s + "' (expected product or joint)");
}

void TrialConfig::validate() const {
    params.validate();
    if (trials < 1) throw DomainError("trials must be >= 1");
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LEOCOV_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr std::uint64_t uplink_stream = 1;
constexpr std::uint64_t feeder_stream = 2;
constexpr std::uint64_t joint_stream = 3;

double versine(double angle) {
    const double s = std::sin(0.5 * angle);
    return 2.0 * s * s;
}

double half_angle_from_versine(double w) { return 2.0 * std::asin(std::sqrt(std::clamp(0.5 * w, 0.0, 1.0))); }

ShellPoint point_from_versine(double w, double radius, RandomEngine& rng) {
    const double rho = std::sqrt(std::max(0.0, w * (2.0 - w)));
    const double az = 2.0 * std::numbers::pi * uniform01(rng);
    return {{rho * std::cos(az), rho * std::sin(az), 1.0 - w}, radius};
}

// Constants shared by all trials of one run.
struct Setup {
    const SystemParams& p;
    double re, rs, H, rmax;
    double vers1;       // device region, ground cap
    double theta3;      // half-angle of a satellite footprint / of the visible shell cap
    double vers3;
    double pl1, pl2;    // (c / 4 pi f)^2
    double target_gain, main_gain, side_gain, feeder_gain;
    double pm;
    bool thinning;

    explicit Setup(const TrialConfig& cfg)
        : p(cfg.params),
          re(p.sphere.earth_radius_km),
          rs(p.sphere.shell_radius_km()),
          H(p.sphere.satellite_altitude_km),
          rmax(p.r_max_km()),
          vers1(versine(p.theta1())),
          theta3(coverage_cap_angle(p.phi_s(), p.sphere)),
          vers3(versine(theta3)),
          pl1(path_loss(p.f1_hz, 0.0, 1.0)),
          pl2(path_loss(p.f2_hz, 0.0, 1.0)),
          target_gain(p.target_link_gain()),
          main_gain(p.antenna.device_main_gain * p.satellite_gain()),
          side_gain(p.antenna.device_side_gain * p.satellite_gain()),
          feeder_gain(p.feeder_link_gain()),
          pm(p.antenna.device_threshold_angle / (2.0 * std::numbers::pi)),
          thinning(cfg.duty_cycle_mode == DutyCycleMode::thinning) {
        cfg.validate();
    }

    // ground-to-pole distance for a shell point with 1 - cos(angle) = w
    double shell_to_pole(double w) const { return std::sqrt(H * H + 2.0 * rs * re * w); }
};

// Draws the constellation as 1 - cos(polar angle) values about the pole.
void draw_constellation(std::vector<double>& w, unsigned n, RandomEngine& rng) {
    w.resize(n);
    for (unsigned i = 0; i < n; ++i) w[i] = 2.0 * uniform01(rng);
}

// Devices and their interference at the serving satellite with 1-cos = w_sat.
void add_uplink_interference(const Setup& s, double w_sat, UplinkTrial& out, RandomEngine& rng,
                             std::vector<double>* distances) {
    const ShellPoint sat = point_from_versine(w_sat, s.rs, rng);
    const double theta_sat = half_angle_from_versine(w_sat);
    const double theta_lim = std::min(std::numbers::pi, theta_sat + s.theta3 * (1.0 + 1e-9) + 1e-12);
    const double w_lim = versine(theta_lim);
    NakagamiSampler fading(s.p.nakagami);
    const double a = s.p.alpha1;

    auto consider = [&](double w_dev) {
        if (w_dev > w_lim) return;
        const ShellPoint dev = point_from_versine(w_dev, s.re, rng);
        const double d = distance_km(dev, sat);
        if (d > s.rmax) return;
        ++out.interferers;
        if (distances) distances->push_back(d);
        const double gain = uniform01(rng) < s.pm ? s.main_gain : s.side_gain;
        double scale = s.p.duty_cycle;
        if (s.thinning) {
            if (uniform01(rng) >= s.p.duty_cycle) return;
            scale = 1.0;
        }
        out.interference_w += s.p.p_t_w * gain * scale * s.pl1 * std::pow(d, -a) * fading(rng);
    };

    const unsigned others = s.p.N_T - 1;
    for (unsigned j = 0; j < others; ++j) consider(uniform01(rng) * s.vers1);

    // The footprint may reach past the device region; extend it at the same density.
    if (theta_lim > s.p.theta1() && others > 0) {
        const double vers_ext = versine(theta_lim);
        const double q = (vers_ext - s.vers1) / s.vers1;
        const double whole = std::floor(q);
        std::binomial_distribution<unsigned> extra(others, q - whole);
        const unsigned count = static_cast<unsigned>(whole) * others + extra(rng);
        for (unsigned j = 0; j < count; ++j) consider(s.vers1 + uniform01(rng) * (vers_ext - s.vers1));
    }
}

UplinkTrial uplink_from_constellation(const Setup& s, const std::vector<double>& w, RandomEngine& rng,
                                      std::vector<double>* distances, std::size_t* serving_index) {
    UplinkTrial out;
    const auto it = std::min_element(w.begin(), w.end());
    const double d = s.shell_to_pole(*it);
    out.serving_distance_km = d;
    if (serving_index) *serving_index = static_cast<std::size_t>(it - w.begin());
    if (d > s.rmax) return out;
    out.served = true;
    NakagamiSampler fading(s.p.nakagami);
    out.signal_w = s.p.p_t_w * s.target_gain * s.pl1 * std::pow(d, -s.p.alpha1) * fading(rng);
    add_uplink_interference(s, *it, out, rng, distances);
    return out;
}

UplinkTrial uplink_trial(const Setup& s, std::uint64_t seed, std::int64_t index, std::vector<double>* distances,
                         std::vector<double>& buffer) {
    RandomEngine rng = trial_engine(seed, static_cast<std::uint64_t>(index), uplink_stream);
    draw_constellation(buffer, s.p.N_S, rng);
    return uplink_from_constellation(s, buffer, rng, distances, nullptr);
}

void add_feeder_satellite(const Setup& s, double w, FeederTrial& out, ShadowedRicianSampler& fading,
                          RandomEngine& rng) {
    const double d = s.shell_to_pole(w);
    if (d > s.rmax) return;
    ++out.interferers;
    out.interference_w += s.p.p_n_w * s.feeder_gain * s.pl2 * std::pow(d, -s.p.alpha2) * fading(rng);
}

FeederTrial feeder_trial(const Setup& s, const TrialConfig& cfg, std::int64_t index, std::vector<double>& w) {
    RandomEngine rng = trial_engine(cfg.seed, static_cast<std::uint64_t>(index), feeder_stream);
    ShadowedRicianSampler fading(s.p.sr);
    FeederTrial out;
    const double a = s.p.alpha2;

    if (!cfg.condition_on_nonempty_visible_set) {
        // target placed uniformly on the visible cap, the rest anywhere on the shell
        const double wt = uniform01(rng) * s.vers3;
        out.target_distance_km = std::min(s.shell_to_pole(wt), s.rmax);
        out.signal_w = s.p.p_s_w * s.feeder_gain * s.pl2 * std::pow(out.target_distance_km, -a) * fading(rng);
        for (unsigned i = 1; i < s.p.N_S; ++i) add_feeder_satellite(s, 2.0 * uniform01(rng), out, fading, rng);
        out.visible = out.interferers + 1;
        out.first_draw_visible = out.visible;
        return out;
    }

    std::vector<std::size_t> visible;
    for (unsigned attempt = 1;; ++attempt) {
        if (attempt > 10000000u) throw DomainError("no constellation with a visible satellite after 1e7 draws");
        draw_constellation(w, s.p.N_S, rng);
        visible.clear();
        for (std::size_t i = 0; i < w.size(); ++i)
            if (s.shell_to_pole(w[i]) <= s.rmax) visible.push_back(i);
        if (attempt == 1) out.first_draw_visible = static_cast<unsigned>(visible.size());
        if (!visible.empty()) {
            out.attempts = attempt;
            break;
        }
    }
    out.visible = static_cast<unsigned>(visible.size());
    const std::size_t pick = std::min(visible.size() - 1, static_cast<std::size_t>(uniform01(rng) * visible.size()));
    const std::size_t target = visible[pick];
    out.target_distance_km = s.shell_to_pole(w[target]);
    out.signal_w = s.p.p_s_w * s.feeder_gain * s.pl2 * std::pow(out.target_distance_km, -a) * fading(rng);
    for (std::size_t i : visible)
        if (i != target) add_feeder_satellite(s, w[i], out, fading, rng);
    return out;
}

JointTrial joint_trial(const Setup& s, const TrialConfig& cfg, std::int64_t index, std::vector<double>& w) {
    RandomEngine rng = trial_engine(cfg.seed, static_cast<std::uint64_t>(index), joint_stream);
    draw_constellation(w, s.p.N_S, rng);
    JointTrial out;
    std::size_t serving = 0;
    out.uplink = uplink_from_constellation(s, w, rng, nullptr, &serving);
    if (!out.uplink.served) return out;
    ShadowedRicianSampler fading(s.p.sr);
    FeederTrial& f = out.feeder;
    f.target_distance_km = out.uplink.serving_distance_km;
    f.signal_w = s.p.p_s_w * s.feeder_gain * s.pl2 * std::pow(f.target_distance_km, -s.p.alpha2) * fading(rng);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (i != serving) add_feeder_satellite(s, w[i], f, fading, rng);
    f.visible = f.interferers + 1;
    f.first_draw_visible = f.visible;
    return out;
}

template <class R, class F>
std::vector<R> run_parallel(std::int64_t n, unsigned threads, F make_worker) {
    std::vector<R> out(static_cast<std::size_t>(n));
    const unsigned workers = static_cast<unsigned>(std::min<std::int64_t>(std::max(1u, threads), n));
    std::vector<std::exception_ptr> errors(workers);
    auto body = [&](unsigned w) {
        try {
            auto trial = make_worker();
            const std::int64_t lo = n * w / workers;
            const std::int64_t hi = n * (w + 1) / workers;
            for (std::int64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = trial(i);
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
    return out;
}

bool noise_for(NoiseMode m, bool feeder_rate) {
    if (m == NoiseMode::on) return true;
    if (m == NoiseMode::off) return false;
    return feeder_rate;
}

EstimateWithCI proportion(std::int64_t hits, std::int64_t n, std::uint64_t seed) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, seed};
}

EstimateWithCI sample_mean(const std::vector<double>& v, std::uint64_t seed) {
    CompensatedSum s;
    for (double x : v) s.add(x);
    const double n = static_cast<double>(v.size());
    const double mean = s.value() / n;
    CompensatedSum ss;
    for (double x : v) ss.add((x - mean) * (x - mean));
    const double var = v.size() > 1 ? ss.value() / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n), static_cast<std::int64_t>(v.size()), seed};
}

// rate contribution; a trial without interferers and without noise falls back to S / sigma^2
double rate_term(double signal, double interference, double sigma2, bool noise) {
    double denom = interference + (noise ? sigma2 : 0.0);
    if (denom <= 0.0) denom = sigma2;
    return std::log2(1.0 + signal / denom);
}

}  // namespace

double uplink_sinr(const UplinkTrial& t, const SystemParams& p, bool noise) {
    if (!t.served) return 0.0;
    const double denom = t.interference_w + (noise ? p.sigma2_w : 0.0);
    return denom > 0.0 ? t.signal_w / denom : std::numeric_limits<double>::infinity();
}

double feeder_sinr(const FeederTrial& t, const SystemParams& p, bool noise) {
    const double denom = t.interference_w + (noise ? p.sigma2_w : 0.0);
    return denom > 0.0 ? t.signal_w / denom : std::numeric_limits<double>::infinity();
}

UplinkTrial simulate_uplink_trial(const TrialConfig& cfg, std::int64_t index, std::vector<double>* distances) {
    Setup s(cfg);
    std::vector<double> buffer;
    return uplink_trial(s, cfg.seed, index, distances, buffer);
}

FeederTrial simulate_feeder_trial(const TrialConfig& cfg, std::int64_t index) {
    Setup s(cfg);
    std::vector<double> buffer;
    return feeder_trial(s, cfg, index, buffer);
}

JointTrial simulate_joint_trial(const TrialConfig& cfg, std::int64_t index) {
    Setup s(cfg);
    std::vector<double> buffer;
    return joint_trial(s, cfg, index, buffer);
}

std::vector<UplinkTrial> run_uplink_trials(const TrialConfig& cfg) {
    const Setup s(cfg);
    return run_parallel<UplinkTrial>(cfg.trials, resolve_threads(cfg.threads), [&] {
        return [&s, &cfg, buffer = std::vector<double>()](std::int64_t i) mutable {
            return uplink_trial(s, cfg.seed, i, nullptr, buffer);
        };
    });
}

std::vector<FeederTrial> run_feeder_trials(const TrialConfig& cfg) {
    const Setup s(cfg);
    return run_parallel<FeederTrial>(cfg.trials, resolve_threads(cfg.threads), [&] {
        return [&s, &cfg, buffer = std::vector<double>()](std::int64_t i) mutable {
            return feeder_trial(s, cfg, i, buffer);
        };
    });
}

std::vector<JointTrial> run_joint_trials(const TrialConfig& cfg) {
    const Setup s(cfg);
    return run_parallel<JointTrial>(cfg.trials, resolve_threads(cfg.threads), [&] {
        return [&s, &cfg, buffer = std::vector<double>()](std::int64_t i) mutable {
            return joint_trial(s, cfg, i, buffer);
        };
    });
}

std::vector<EstimateWithCI> coverage_from_uplink(const std::vector<UplinkTrial>& trials, const std::vector<double>& T,
                                                 const TrialConfig& cfg) {
    const bool noise = noise_for(cfg.noise_in_sinr, false);
    std::vector<double> sinr;
    sinr.reserve(trials.size());
    for (const auto& t : trials) sinr.push_back(t.served ? uplink_sinr(t, cfg.params, noise) : -1.0);
    std::vector<EstimateWithCI> out;
    for (double th : T) {
        const auto hits = std::count_if(sinr.begin(), sinr.end(), [th](double x) { return x >= 0.0 && x >= th; });
        out.push_back(proportion(hits, static_cast<std::int64_t>(trials.size()), cfg.seed));
    }
    return out;
}

std::vector<EstimateWithCI> coverage_from_feeder(const std::vector<FeederTrial>& trials, const std::vector<double>& T,
                                                 const TrialConfig& cfg) {
    const bool noise = noise_for(cfg.noise_in_sinr, false);
    std::vector<double> sinr;
    sinr.reserve(trials.size());
    for (const auto& t : trials) sinr.push_back(feeder_sinr(t, cfg.params, noise));
    std::vector<EstimateWithCI> out;
    for (double th : T) {
        const auto hits = std::count_if(sinr.begin(), sinr.end(), [th](double x) { return x >= th; });
        out.push_back(proportion(hits, static_cast<std::int64_t>(trials.size()), cfg.seed));
    }
    return out;
}

EstimateWithCI rate_from_uplink(const std::vector<UplinkTrial>& trials, const TrialConfig& cfg) {
    const bool noise = noise_for(cfg.noise_in_sinr, false);
    std::vector<double> v;
    v.reserve(trials.size());
    for (const auto& t : trials)
        v.push_back(t.served ? rate_term(t.signal_w, t.interference_w, cfg.params.sigma2_w, noise) : 0.0);
    return sample_mean(v, cfg.seed);
}

EstimateWithCI rate_from_feeder(const std::vector<FeederTrial>& trials, const TrialConfig& cfg) {
    const bool noise = noise_for(cfg.noise_in_sinr, true);
    std::vector<double> v;
    v.reserve(trials.size());
    for (const auto& t : trials) v.push_back(rate_term(t.signal_w, t.interference_w, cfg.params.sigma2_w, noise));
    return sample_mean(v, cfg.seed);
}

EstimateWithCI product_estimate(const EstimateWithCI& a, const EstimateWithCI& b) {
    const double se = std::sqrt(a.mean * a.mean * b.std_error * b.std_error + b.mean * b.mean * a.std_error * a.std_error);
    return {a.mean * b.mean, se, std::min(a.trials_used, b.trials_used), a.seed};
}

std::vector<EstimateWithCI> simulate_coverage_ts(const std::vector<double>& T1, const TrialConfig& cfg) {
    return coverage_from_uplink(run_uplink_trials(cfg), T1, cfg);
}

std::vector<EstimateWithCI> simulate_coverage_ses(const std::vector<double>& T2, const TrialConfig& cfg) {
    return coverage_from_feeder(run_feeder_trials(cfg), T2, cfg);
}

std::vector<EstimateWithCI> simulate_coverage_e2e(const std::vector<double>& T, const TrialConfig& cfg, E2EMode mode) {
    std::vector<EstimateWithCI> out;
    if (mode == E2EMode::product) {
        const auto a = simulate_coverage_ts(T, cfg);
        const auto b = simulate_coverage_ses(T, cfg);
        for (std::size_t i = 0; i < T.size(); ++i) out.push_back(product_estimate(a[i], b[i]));
        return out;
    }
    const auto trials = run_joint_trials(cfg);
    const bool noise = noise_for(cfg.noise_in_sinr, false);
    for (double th : T) {
        std::int64_t hits = 0;
        for (const auto& t : trials) {
            if (!t.uplink.served) continue;
            if (uplink_sinr(t.uplink, cfg.params, noise) >= th && feeder_sinr(t.feeder, cfg.params, noise) >= th) ++hits;
        }
        out.push_back(proportion(hits, static_cast<std::int64_t>(trials.size()), cfg.seed));
    }
    return out;
}

EstimateWithCI simulate_coverage_ts(double T1, const TrialConfig& cfg) { return simulate_coverage_ts(std::vector<double>{T1}, cfg)[0]; }
EstimateWithCI simulate_coverage_ses(double T2, const TrialConfig& cfg) { return simulate_coverage_ses(std::vector<double>{T2}, cfg)[0]; }
EstimateWithCI simulate_coverage_e2e(double T, const TrialConfig& cfg, E2EMode mode) {
    return simulate_coverage_e2e(std::vector<double>{T}, cfg, mode)[0];
}
EstimateWithCI simulate_aer_ts(const TrialConfig& cfg) { return rate_from_uplink(run_uplink_trials(cfg), cfg); }
EstimateWithCI simulate_aer_ses(const TrialConfig& cfg) { return rate_from_feeder(run_feeder_trials(cfg), cfg); }

}  // namespace leocov
