#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leocov/params.hpp"
#include "leocov/rng.hpp"

namespace leocov {

// auto: noise-free SINR for coverage and the uplink rate, noisy SINR for the
// feeder-link rate (the analytic conventions).
enum class NoiseMode { automatic, on, off };

enum class DutyCycleMode {
    power_scaling,  // every interferer transmits with power scaled by the duty cycle
    thinning,       // each interferer is active with probability equal to the duty cycle
};

enum class E2EMode { product, joint };

struct TrialConfig {
    SystemParams params{};
    std::int64_t trials = 50000;
    std::uint64_t seed = 1;
    NoiseMode noise_in_sinr = NoiseMode::automatic;
    bool condition_on_nonempty_visible_set = false;
    DutyCycleMode duty_cycle_mode = DutyCycleMode::power_scaling;
    unsigned threads = 0;  // 0: LEOCOV_THREADS, else hardware concurrency

    void validate() const;
};

struct EstimateWithCI {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials_used = 0;
    std::uint64_t seed = 0;
};

struct UplinkTrial {
    bool served = false;
    double serving_distance_km = 0.0;
    unsigned interferers = 0;
    double signal_w = 0.0;
    double interference_w = 0.0;
};

struct FeederTrial {
    unsigned visible = 0;        // satellites within r_max of the ES in the realized constellation
    unsigned first_draw_visible = 0;  // same count for the first (unconditioned) constellation draw
    unsigned attempts = 1;
    double target_distance_km = 0.0;
    unsigned interferers = 0;
    double signal_w = 0.0;
    double interference_w = 0.0;
};

struct JointTrial {
    UplinkTrial uplink;
    FeederTrial feeder;  // target is the serving satellite; ES sits at the device
};

const char* to_string(NoiseMode m);
const char* to_string(DutyCycleMode m);
const char* to_string(E2EMode m);
NoiseMode noise_mode_from_string(const std::string& s);
DutyCycleMode duty_cycle_mode_from_string(const std::string& s);
E2EMode e2e_mode_from_string(const std::string& s);

unsigned resolve_threads(unsigned requested);

// Single trials; `distances` (if given) receives every interferer distance.
UplinkTrial simulate_uplink_trial(const TrialConfig& cfg, std::int64_t index, std::vector<double>* distances = nullptr);
FeederTrial simulate_feeder_trial(const TrialConfig& cfg, std::int64_t index);
JointTrial simulate_joint_trial(const TrialConfig& cfg, std::int64_t index);

std::vector<UplinkTrial> run_uplink_trials(const TrialConfig& cfg);
std::vector<FeederTrial> run_feeder_trials(const TrialConfig& cfg);
std::vector<JointTrial> run_joint_trials(const TrialConfig& cfg);

double uplink_sinr(const UplinkTrial& t, const SystemParams& p, bool noise);
double feeder_sinr(const FeederTrial& t, const SystemParams& p, bool noise);

// Coverage over a threshold grid from one set of trials (thresholds linear).
std::vector<EstimateWithCI> coverage_from_uplink(const std::vector<UplinkTrial>& trials, const std::vector<double>& T,
                                                 const TrialConfig& cfg);
std::vector<EstimateWithCI> coverage_from_feeder(const std::vector<FeederTrial>& trials, const std::vector<double>& T,
                                                 const TrialConfig& cfg);
EstimateWithCI rate_from_uplink(const std::vector<UplinkTrial>& trials, const TrialConfig& cfg);
EstimateWithCI rate_from_feeder(const std::vector<FeederTrial>& trials, const TrialConfig& cfg);

std::vector<EstimateWithCI> simulate_coverage_ts(const std::vector<double>& T1, const TrialConfig& cfg);
std::vector<EstimateWithCI> simulate_coverage_ses(const std::vector<double>& T2, const TrialConfig& cfg);
std::vector<EstimateWithCI> simulate_coverage_e2e(const std::vector<double>& T, const TrialConfig& cfg,
                                                  E2EMode mode = E2EMode::product);
EstimateWithCI simulate_coverage_ts(double T1, const TrialConfig& cfg);
EstimateWithCI simulate_coverage_ses(double T2, const TrialConfig& cfg);
EstimateWithCI simulate_coverage_e2e(double T, const TrialConfig& cfg, E2EMode mode = E2EMode::product);
EstimateWithCI simulate_aer_ts(const TrialConfig& cfg);
EstimateWithCI simulate_aer_ses(const TrialConfig& cfg);

// product of two independent estimates with first-order error propagation
EstimateWithCI product_estimate(const EstimateWithCI& a, const EstimateWithCI& b);

}  // namespace leocov
