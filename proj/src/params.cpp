#include "leocov/params.hpp"

#include <cmath>
#include <numbers>

#include "leocov/numerics.hpp"

namespace leocov {

double SystemParams::target_link_gain() const {
    return target_gain == TargetGain::main_lobe ? antenna.device_main_gain * satellite_gain() : antenna.device_main_gain;
}

double SystemParams::main_gain_ratio() const {
    return antenna.device_main_gain * satellite_gain() / target_link_gain();
}

double SystemParams::side_gain_ratio() const {
    return antenna.device_side_gain * satellite_gain() / target_link_gain();
}

void SystemParams::validate() const {
    sphere.validate();
    antenna.validate();
    nakagami.validate();
    sr.validate();
    if (!(Rc_km > 0.0)) throw DomainError("Rc_km must be positive");
    if (N_T < 1) throw DomainError("N_T must be >= 1");
    if (N_S < 1) throw DomainError("N_S must be >= 1");
    if (!(duty_cycle > 0.0 && duty_cycle <= 1.0)) throw DomainError("duty_cycle must lie in (0, 1]");
    if (!(p_t_w > 0.0)) throw DomainError("p_t_w must be positive");
    if (!(p_s_w > 0.0)) throw DomainError("p_s_w must be positive");
    if (!(p_n_w > 0.0)) throw DomainError("p_n_w must be positive");
    if (!(f1_hz > 0.0) || !(f2_hz > 0.0)) throw DomainError("carrier frequencies must be positive");
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw DomainError("path-loss exponents must be positive");
    if (!(sigma2_w > 0.0)) throw DomainError("noise power must be positive");
    if (phi_s() > 2.0 * horizon_angle(sphere)) throw DomainError("phi_s exceeds twice the horizon angle");
}

const char* to_string(TargetGain g) { return g == TargetGain::main_lobe ? "main_lobe" : "device_only"; }

TargetGain target_gain_from_string(const std::string& s) {
    if (s == "main_lobe") return TargetGain::main_lobe;
    if (s == "device_only") return TargetGain::device_only;
    throw DomainError("unknown target gain mode '" + s + "' (expected main_lobe or device_only)");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace leocov
