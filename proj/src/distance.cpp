#include "leocov/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "leocov/numerics.hpp"

namespace leocov {

double distance_km(const ShellPoint& a, const ShellPoint& b) {
    // |a - b|^2 = (ra - rb)^2 + 2 ra rb (1 - cos psi), with 1 - cos psi taken
    // from the chord between the unit vectors to avoid cancellation.
    const double dx = a.dir.x - b.dir.x, dy = a.dir.y - b.dir.y, dz = a.dir.z - b.dir.z;
    const double chord2 = dx * dx + dy * dy + dz * dz;
    const double dr = a.radius_km - b.radius_km;
    return std::sqrt(dr * dr + a.radius_km * b.radius_km * chord2);
}

DistanceDistribution::DistanceDistribution(std::string name, double lo, double hi, Fn cdf, Fn pdf, Fn quantile)
    : name_(std::move(name)), lo_(lo), hi_(hi), cdf_(std::move(cdf)), pdf_(std::move(pdf)), quantile_(std::move(quantile)) {
    if (!(lo < hi)) throw DomainError("distance distribution needs lo < hi");
}

double DistanceDistribution::cdf(double r) const {
    if (r <= lo_) return 0.0;
    if (r >= hi_) return 1.0;
    return std::clamp(cdf_(r), 0.0, 1.0);
}

double DistanceDistribution::pdf(double r) const {
    if (r < lo_ || r > hi_) return 0.0;
    return pdf_(r);
}

double DistanceDistribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u outside [0, 1]");
    if (u == 0.0) return lo_;
    if (u == 1.0) return hi_;
    return std::clamp(quantile_(u), lo_, hi_);
}

namespace {

// Shared shape of the shell-to-ground laws: F(r) = (r^2 - H^2) / (4 (re+H) re).
struct GroundShellLaw {
    double H, scale;  // scale = 4 (re + H) re

    explicit GroundShellLaw(const SphereModel& s)
        : H(s.satellite_altitude_km), scale(4.0 * s.shell_radius_km() * s.earth_radius_km) {}
    double cdf(double r) const { return (r - H) * (r + H) / scale; }
    double pdf(double r) const { return 2.0 * r / scale; }
    double quantile(double u) const { return std::sqrt(H * H + u * scale); }
};

DistanceDistribution ground_shell(const std::string& name, const SphereModel& sphere) {
    sphere.validate();
    GroundShellLaw g(sphere);
    const double hi = sphere.satellite_altitude_km + 2.0 * sphere.earth_radius_km;
    return DistanceDistribution(
        name, sphere.satellite_altitude_km, hi, [g](double r) { return g.cdf(r); },
        [g](double r) { return g.pdf(r); }, [g](double u) { return g.quantile(u); });
}

DistanceDistribution truncated(const std::string& name, const SphereModel& sphere, double phi_s) {
    sphere.validate();
    const double H = sphere.satellite_altitude_km;
    const double rmax = max_slant_range(phi_s, sphere);
    if (!(rmax > H)) throw DomainError(name + ": beamwidth leaves an empty coverage range");
    const double span = (rmax - H) * (rmax + H);
    return DistanceDistribution(
        name, H, rmax, [H, span](double r) { return (r - H) * (r + H) / span; },
        [span](double r) { return 2.0 * r / span; }, [H, span](double u) { return std::sqrt(H * H + u * span); });
}

}  // namespace

DistanceDistribution dist_satellite_to_ground(const SphereModel& sphere) {
    return ground_shell("satellite_to_ground", sphere);
}

DistanceDistribution dist_device_to_satellite(const SphereModel& sphere) {
    return ground_shell("device_to_satellite", sphere);
}

DistanceDistribution dist_nearest_satellite(const SphereModel& sphere, unsigned n_satellites) {
    if (n_satellites < 1) throw DomainError("dist_nearest_satellite: need at least one satellite");
    sphere.validate();
    GroundShellLaw g(sphere);
    const double n = n_satellites;
    const double hi = sphere.satellite_altitude_km + 2.0 * sphere.earth_radius_km;
    return DistanceDistribution(
        "nearest_satellite", sphere.satellite_altitude_km, hi,
        [g, n](double r) { return -std::expm1(n * std::log1p(-std::min(1.0, g.cdf(r)))); },
        [g, n](double r) {
            const double F = std::min(1.0, g.cdf(r));
            if (F >= 1.0) return n == 1.0 ? g.pdf(r) : 0.0;
            return n * std::exp((n - 1.0) * std::log1p(-F)) * g.pdf(r);
        },
        [g, n](double u) { return g.quantile(-std::expm1(std::log1p(-u) / n)); });
}

DistanceDistribution dist_interferer_to_serving_sat(const SphereModel& sphere, double phi_s) {
    return truncated("interferer_to_serving_satellite", sphere, phi_s);
}

DistanceDistribution dist_target_satellite_to_es(const SphereModel& sphere, double phi_s) {
    return truncated("target_satellite_to_es", sphere, phi_s);
}

double p_zero(const SphereModel& sphere, double phi_s, unsigned n_satellites) {
    if (n_satellites < 1) throw DomainError("p_zero: need at least one satellite");
    GroundShellLaw g(sphere);
    const double F = g.cdf(max_slant_range(phi_s, sphere));
    return std::exp(static_cast<double>(n_satellites) * std::log1p(-F));
}

ShellPoint sample_uniform_cap(const CapSpec& cap, RandomEngine& rng) {
    cap.validate();
    const double s = std::sin(0.5 * cap.zenith_angle_rad);
    const double vers = 2.0 * s * s;              // 1 - cos(zenith)
    const double one_minus_z = uniform01(rng) * vers;  // 1 - cos(theta)
    const double z = 1.0 - one_minus_z;
    const double rho = std::sqrt(std::max(0.0, one_minus_z * (2.0 - one_minus_z)));
    const double az = 2.0 * std::numbers::pi * uniform01(rng);
    return {{rho * std::cos(az), rho * std::sin(az), z}, cap.shell_radius_km};
}

double sample_distance(const DistanceDistribution& d, RandomEngine& rng) { return d.quantile(uniform01(rng)); }

}  // namespace leocov
