#pragma once

namespace leocov {

struct SphereModel {
    double earth_radius_km = 6371.0;
    double satellite_altitude_km = 400.0;

    double shell_radius_km() const { return earth_radius_km + satellite_altitude_km; }
    void validate() const;
};

struct CapSpec {
    double zenith_angle_rad = 0.0;
    double shell_radius_km = 0.0;

    void validate() const;
};

// Largest off-nadir angle that still reaches the ground, asin(r_e / (r_e + H)).
double horizon_angle(const SphereModel& sphere);

double slant_range(double phi, const SphereModel& sphere);
double max_slant_range(double phi_s, const SphereModel& sphere);

double coverage_cap_cos_theta3(double r_max, double phi_s, const SphereModel& sphere);
// 1 - cos(theta3), computed without the cancellation of the form above.
double coverage_cap_versine(double r_max, double phi_s, const SphereModel& sphere);
double coverage_cap_angle(double phi_s, const SphereModel& sphere);

double cap_area(const CapSpec& cap);

struct ClampedProbability {
    double value = 0.0;
    double raw = 0.0;
    bool clamped() const { return raw != value; }
};

// Fraction of the device region that lies inside the satellite footprint.
// Values above one (footprint wider than the device region) are clamped and
// flagged through `raw`.
ClampedProbability interferer_success_prob(const SphereModel& sphere, double Rc_km, double phi_s);

// Probability that a uniform shell point is visible from a fixed ground point.
double satellite_success_prob(const SphereModel& sphere, double phi_s);

}  // namespace leocov
