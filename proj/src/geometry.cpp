#include "leocov/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "leocov/numerics.hpp"

namespace leocov {

void SphereModel::validate() const {
    if (!(earth_radius_km > 0.0)) throw DomainError("earth radius must be positive");
    if (!(satellite_altitude_km > 0.0)) throw DomainError("satellite altitude must be positive");
}

void CapSpec::validate() const {
    if (!(zenith_angle_rad >= 0.0 && zenith_angle_rad <= std::numbers::pi))
        throw DomainError("cap zenith angle must lie in [0, pi]");
    if (!(shell_radius_km > 0.0)) throw DomainError("cap shell radius must be positive");
}

double horizon_angle(const SphereModel& sphere) {
    return std::asin(sphere.earth_radius_km / sphere.shell_radius_km());
}

double slant_range(double phi, const SphereModel& sphere) {
    sphere.validate();
    const double re = sphere.earth_radius_km;
    const double rs = sphere.shell_radius_km();
    if (phi < 0.0) throw DomainError("slant_range: negative off-nadir angle");
    const double s = rs * std::sin(phi);
    // re^2 - s^2 factored to keep precision near the horizon
    double radicand = (re - s) * (re + s);
    if (radicand < 0.0) {
        if (radicand < -1e-12 * re * re)
            throw DomainError("slant_range: angle " + std::to_string(phi) + " rad is beyond the horizon");
        radicand = 0.0;  // rounding at the horizon itself
    }
    const double c = std::cos(phi);
    // rs*c - sqrt(...) cancels for small phi; use the conjugate form instead
    const double root = std::sqrt(radicand);
    return (rs * rs - re * re) / (rs * c + root);
}

double max_slant_range(double phi_s, const SphereModel& sphere) {
    if (!(phi_s >= 0.0)) throw DomainError("max_slant_range: beamwidth must be nonnegative");
    return slant_range(0.5 * phi_s, sphere);
}

double coverage_cap_versine(double r_max, double phi_s, const SphereModel& sphere) {
    return (r_max * std::cos(0.5 * phi_s) - sphere.satellite_altitude_km) / sphere.earth_radius_km;
}

double coverage_cap_cos_theta3(double r_max, double phi_s, const SphereModel& sphere) {
    return (sphere.shell_radius_km() - r_max * std::cos(0.5 * phi_s)) / sphere.earth_radius_km;
}

double coverage_cap_angle(double phi_s, const SphereModel& sphere) {
    const double v = coverage_cap_versine(max_slant_range(phi_s, sphere), phi_s, sphere);
    return 2.0 * std::asin(std::sqrt(std::max(0.0, 0.5 * v)));
}

double cap_area(const CapSpec& cap) {
    cap.validate();
    const double s = std::sin(0.5 * cap.zenith_angle_rad);
    return 4.0 * std::numbers::pi * cap.shell_radius_km * cap.shell_radius_km * s * s;
}

ClampedProbability interferer_success_prob(const SphereModel& sphere, double Rc_km, double phi_s) {
    if (!(Rc_km > 0.0)) throw DomainError("interferer_success_prob: Rc must be positive");
    const double v3 = coverage_cap_versine(max_slant_range(phi_s, sphere), phi_s, sphere);
    const double h1 = std::sin(0.5 * Rc_km / sphere.earth_radius_km);
    const double raw = v3 / (2.0 * h1 * h1);
    return {raw > 1.0 ? 1.0 : raw, raw};
}

double satellite_success_prob(const SphereModel& sphere, double phi_s) {
    return 0.5 * coverage_cap_versine(max_slant_range(phi_s, sphere), phi_s, sphere);
}

}  // namespace leocov
