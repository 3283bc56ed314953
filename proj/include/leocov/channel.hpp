#pragma once

#include <array>
#include <random>

#include "leocov/numerics.hpp"
#include "leocov/rng.hpp"

namespace leocov {

inline constexpr double speed_of_light_km_s = 299792.458;

struct AntennaPattern {
    double device_main_gain = 10.0;          // G_t, linear
    double device_side_gain = 1.0;           // g_t, linear
    double device_threshold_angle = 1.0471975511965976;  // phi_t, 60 deg
    double satellite_beamwidth = 0.43633231299858238;    // phi_s, 25 deg
    double earth_station_gain = 1.0;         // G_ES, linear

    void validate() const;
};

struct NakagamiParams {
    int m = 2;

    // Alzer constant N (N!)^(-1/N)
    double eta() const;
    void validate() const;
};

struct ShadowedRicianParams {
    double cbar = 0.158;  // half of the scatter power
    double q = 1.0;
    double omega = 0.1;   // line-of-sight power

    double kappa() const;
    double delta() const;
    double beta() const;
    double mean() const { return 2.0 * cbar + omega; }
    void validate() const;
};

struct DirectivityGainLaw {
    std::array<double, 2> values{};         // main-main, side-main
    std::array<double, 2> probabilities{};

    double mean() const { return values[0] * probabilities[0] + values[1] * probabilities[1]; }
};

double satellite_main_gain(double phi_s);
double path_loss(double frequency_hz, double exponent, double r_km);

double nakagami_power_pdf(double x, const NakagamiParams& p);
double nakagami_power_ccdf(double x, const NakagamiParams& p);
double nakagami_ccdf_alzer(double psi, const NakagamiParams& p);

double sr_power_pdf(double x, const ShadowedRicianParams& p);
double sr_mgf(double x, const ShadowedRicianParams& p);
double sr_series_coefficient(unsigned k, const ShadowedRicianParams& p);
// Psi(k) Gamma(k+1) / (beta - delta)^(k+1); these weights sum to one.
double sr_cdf_coefficient(unsigned k, const ShadowedRicianParams& p);
double sr_power_cdf(double x, const ShadowedRicianParams& p, const SeriesSpec& spec = {});

DirectivityGainLaw interferer_directivity_law(const AntennaPattern& ap);

class NakagamiSampler {
public:
    explicit NakagamiSampler(const NakagamiParams& p);
    double operator()(RandomEngine& rng) { return gamma_(rng); }

private:
    std::gamma_distribution<double> gamma_;
};

// LOS power Gamma(q, omega/q) with a uniform phase, plus complex Gaussian
// scatter of total power 2*cbar.
class ShadowedRicianSampler {
public:
    explicit ShadowedRicianSampler(const ShadowedRicianParams& p);
    double operator()(RandomEngine& rng);

private:
    bool los_;
    std::gamma_distribution<double> los_power_;
    std::normal_distribution<double> scatter_;
};

inline double sample_nakagami_power(const NakagamiParams& p, RandomEngine& rng) { return NakagamiSampler(p)(rng); }
inline double sample_sr_power(const ShadowedRicianParams& p, RandomEngine& rng) { return ShadowedRicianSampler(p)(rng); }

}  // namespace leocov
