#pragma once

#include <functional>
#include <string>

#include "leocov/geometry.hpp"
#include "leocov/rng.hpp"

namespace leocov {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 1.0;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Unit direction plus the radius of the sphere it lives on.
struct ShellPoint {
    Vec3 dir;
    double radius_km = 0.0;
};
using GroundPoint = ShellPoint;

double distance_km(const ShellPoint& a, const ShellPoint& b);

class DistanceDistribution {
public:
    using Fn = std::function<double(double)>;

    DistanceDistribution(std::string name, double lo, double hi, Fn cdf, Fn pdf, Fn quantile);

    double cdf(double r) const;
    double pdf(double r) const;
    // inverse cdf on [0, 1]
    double quantile(double u) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    double lo_, hi_;
    Fn cdf_, pdf_, quantile_;
};

DistanceDistribution dist_satellite_to_ground(const SphereModel& sphere);
DistanceDistribution dist_nearest_satellite(const SphereModel& sphere, unsigned n_satellites);
DistanceDistribution dist_device_to_satellite(const SphereModel& sphere);
DistanceDistribution dist_interferer_to_serving_sat(const SphereModel& sphere, double phi_s);
DistanceDistribution dist_target_satellite_to_es(const SphereModel& sphere, double phi_s);

// Probability that none of n_satellites lies within r_max of a fixed ground point.
double p_zero(const SphereModel& sphere, double phi_s, unsigned n_satellites);

ShellPoint sample_uniform_cap(const CapSpec& cap, RandomEngine& rng);
double sample_distance(const DistanceDistribution& d, RandomEngine& rng);

}  // namespace leocov
