#pragma once

#include <string>

#include "leocov/channel.hpp"
#include "leocov/geometry.hpp"

namespace leocov {

// Gain the serving satellite applies to the target device's signal.
enum class TargetGain {
    main_lobe,    // G_t * G_S(phi_s), same satellite gain as the interferers
    device_only,  // G_t alone; the literal form of the closed-form T-S expression
};

struct SystemParams {
    SphereModel sphere{};
    double Rc_km = 200.0;
    unsigned N_T = 5000;
    unsigned N_S = 3000;
    AntennaPattern antenna{};
    NakagamiParams nakagami{};
    ShadowedRicianParams sr{};
    double duty_cycle = 5e-5;
    double p_t_w = 0.2;
    double p_s_w = 10.0;
    double p_n_w = 10.0;
    double f1_hz = 2e9;
    double f2_hz = 20e9;
    double alpha1 = 2.0;
    double alpha2 = 2.0;
    double sigma2_w = 1.5848931924611107e-13;  // -98 dBm
    TargetGain target_gain = TargetGain::main_lobe;

    double phi_s() const { return antenna.satellite_beamwidth; }
    double r_max_km() const { return max_slant_range(phi_s(), sphere); }
    double theta1() const { return Rc_km / sphere.earth_radius_km; }
    double satellite_gain() const { return satellite_main_gain(phi_s()); }
    double target_link_gain() const;
    // interferer gain over target gain for the two directivity states
    double main_gain_ratio() const;
    double side_gain_ratio() const;
    double feeder_link_gain() const { return satellite_gain() * antenna.earth_station_gain; }

    void validate() const;
};

const char* to_string(TargetGain g);
TargetGain target_gain_from_string(const std::string& s);

double db_to_linear(double db);
double linear_to_db(double x);
double dbm_to_watts(double dbm);
double watts_to_dbm(double w);
double deg_to_rad(double deg);
double rad_to_deg(double rad);

}  // namespace leocov
