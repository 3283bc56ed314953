#include "leocov/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

namespace leocov {

void AntennaPattern::validate() const {
    if (!(device_side_gain > 0.0)) throw DomainError("device side-lobe gain must be positive");
    if (!(device_main_gain >= device_side_gain)) throw DomainError("device main-lobe gain must be >= side-lobe gain");
    if (!(device_threshold_angle >= 0.0 && device_threshold_angle <= 2.0 * std::numbers::pi))
        throw DomainError("device threshold angle must lie in [0, 2*pi]");
    if (!(satellite_beamwidth > 0.0 && satellite_beamwidth < std::numbers::pi))
        throw DomainError("satellite beamwidth must lie in (0, pi)");
    if (!(earth_station_gain > 0.0)) throw DomainError("earth station gain must be positive");
}

double NakagamiParams::eta() const {
    validate();
    return m * std::exp(-std::lgamma(m + 1.0) / m);
}

void NakagamiParams::validate() const {
    if (m < 1) throw DomainError("Nakagami order must be a positive integer");
}

double ShadowedRicianParams::kappa() const {
    validate();
    const double a = 2.0 * cbar * q;
    return std::exp(q * (std::log(a) - std::log(a + omega))) / (2.0 * cbar);
}

double ShadowedRicianParams::delta() const {
    validate();
    return omega / (2.0 * cbar * (2.0 * cbar * q + omega));
}

double ShadowedRicianParams::beta() const {
    validate();
    return 0.5 / cbar;
}

void ShadowedRicianParams::validate() const {
    if (!(cbar > 0.0)) throw DomainError("shadowed-Rician cbar must be positive");
    if (!(q > 0.0)) throw DomainError("shadowed-Rician q must be positive");
    if (!(omega >= 0.0)) throw DomainError("shadowed-Rician omega must be nonnegative");
    // beta - delta = q / (2 cbar q + omega) is positive whenever q > 0
}

double satellite_main_gain(double phi_s) {
    if (!(phi_s > 0.0 && phi_s < 2.0 * std::numbers::pi)) throw DomainError("satellite_main_gain: phi_s must lie in (0, 2*pi)");
    const double s = std::sin(0.25 * phi_s);
    return 1.0 / (s * s);  // 2 / (1 - cos(phi_s/2))
}

double path_loss(double frequency_hz, double exponent, double r_km) {
    if (!(frequency_hz > 0.0)) throw DomainError("path_loss: frequency must be positive");
    if (!(r_km > 0.0)) throw DomainError("path_loss: distance must be positive");
    const double k = speed_of_light_km_s / (4.0 * std::numbers::pi * frequency_hz);
    return k * k * std::pow(r_km, -exponent);
}

double nakagami_power_pdf(double x, const NakagamiParams& p) {
    p.validate();
    if (x < 0.0) return 0.0;
    const double n = p.m;
    if (x == 0.0) return p.m == 1 ? 1.0 : 0.0;
    return std::exp(n * std::log(n) + (n - 1.0) * std::log(x) - n * x - std::lgamma(n));
}

double nakagami_power_ccdf(double x, const NakagamiParams& p) {
    p.validate();
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(p.m), p.m * x);
}

double nakagami_ccdf_alzer(double psi, const NakagamiParams& p) {
    if (psi <= 0.0) return 1.0;
    const double e = std::exp(-p.eta() * psi);
    return -std::expm1(p.m * std::log1p(-e));
}

double sr_power_pdf(double x, const ShadowedRicianParams& p) {
    if (x < 0.0) return 0.0;
    const double bd = p.beta() - p.delta();
    if (bd * x > 740.0) return 0.0;
    const double v = p.kappa() * std::exp(-p.beta() * x) * kummer_1f1(p.q, 1.0, p.delta() * x);
    if (!std::isfinite(v)) throw DomainError("sr_power_pdf: overflow at x = " + std::to_string(x));
    return v;
}

double sr_mgf(double x, const ShadowedRicianParams& p) {
    p.validate();
    if (!(1.0 + 2.0 * p.cbar * x > 0.0)) throw DomainError("sr_mgf: argument must exceed -1/(2 cbar)");
    const double a = 2.0 * p.cbar * p.q + p.omega;
    const double base = p.q / (p.q + x * a);
    if (!(base > 0.0)) throw DomainError("sr_mgf: argument outside the convergence region");
    return std::exp(p.q * std::log(base) + (p.q - 1.0) * std::log1p(2.0 * p.cbar * x));
}

double sr_series_coefficient(unsigned k, const ShadowedRicianParams& p) {
    const double lf = std::lgamma(k + 1.0);
    const double mag = std::exp(k * std::log(p.delta()) - 2.0 * lf);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0) return p.kappa();
    return sign * p.kappa() * mag * pochhammer(1.0 - p.q, k);
}

double sr_cdf_coefficient(unsigned k, const ShadowedRicianParams& p) {
    const double bd = p.beta() - p.delta();
    if (k == 0) return p.kappa() / bd;
    // (-delta/(beta-delta))^k (1-q)_k / k!, built as a running product
    const double r = -p.delta() / bd;
    double c = p.kappa() / bd;
    for (unsigned j = 0; j < k; ++j) c *= r * (1.0 - p.q + j) / (j + 1.0);
    return c;
}

double sr_power_cdf(double x, const ShadowedRicianParams& p, const SeriesSpec& spec) {
    if (x <= 0.0) return 0.0;
    const double y = (p.beta() - p.delta()) * x;
    auto term = [&](std::size_t k) {
        const double c = sr_cdf_coefficient(static_cast<unsigned>(k), p);
        return c == 0.0 ? 0.0 : c * boost::math::gamma_p(k + 1.0, y);
    };
    const double v = sum_series(term, spec).value;
    return std::clamp(v, 0.0, 1.0);
}

DirectivityGainLaw interferer_directivity_law(const AntennaPattern& ap) {
    ap.validate();
    const double gs = satellite_main_gain(ap.satellite_beamwidth);
    const double pm = ap.device_threshold_angle / (2.0 * std::numbers::pi);
    return {{ap.device_main_gain * gs, ap.device_side_gain * gs}, {pm, 1.0 - pm}};
}

NakagamiSampler::NakagamiSampler(const NakagamiParams& p)
    : gamma_((p.validate(), static_cast<double>(p.m)), 1.0 / p.m) {}

ShadowedRicianSampler::ShadowedRicianSampler(const ShadowedRicianParams& p)
    : los_((p.validate(), p.omega > 0.0)),
      los_power_(p.q, p.omega > 0.0 ? p.omega / p.q : 1.0),
      scatter_(0.0, std::sqrt(p.cbar)) {}

double ShadowedRicianSampler::operator()(RandomEngine& rng) {
    double re = scatter_(rng);
    double im = scatter_(rng);
    if (los_) {
        const double a = std::sqrt(los_power_(rng));
        const double phase = 2.0 * std::numbers::pi * uniform01(rng);
        re += a * std::cos(phase);
        im += a * std::sin(phase);
    }
    return re * re + im * im;
}

}  // namespace leocov
