#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "leocov/analysis.hpp"
#include "leocov/channel.hpp"
#include "leocov/distance.hpp"

using namespace leocov;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// First-principles uplink model for the oracle below.
struct UplinkOracle {
    SystemParams p;
    double H, rs, re, rmax, P_I, pm, ratio_main, ratio_side;
    int N;
    double eta;

    explicit UplinkOracle(const SystemParams& sp) : p(sp) {
        H = p.sphere.satellite_altitude_km;
        re = p.sphere.earth_radius_km;
        rs = re + H;
        const double phi = p.phi_s() / 2;
        rmax = rs * std::cos(phi) - std::sqrt(re * re - rs * rs * std::sin(phi) * std::sin(phi));
        const double cos_t3 = (rs * rs + re * re - rmax * rmax) / (2 * rs * re);
        P_I = std::min(1.0, (1 - cos_t3) / (1 - std::cos(p.Rc_km / re)));
        pm = p.antenna.device_threshold_angle / (2 * std::numbers::pi);
        const double gs = 1.0 / std::pow(std::sin(p.phi_s() / 4), 2);
        const double target = p.target_gain == TargetGain::main_lobe ? p.antenna.device_main_gain * gs
                                                                     : p.antenna.device_main_gain;
        ratio_main = p.antenna.device_main_gain * gs / target;
        ratio_side = p.antenna.device_side_gain * gs / target;
        N = p.nakagami.m;
        eta = N * std::pow(std::tgamma(N + 1.0), -1.0 / N);
    }

    double nearest_pdf(double r) const {
        const double F = (r * r - H * H) / (4 * rs * re);
        return p.N_S * std::pow(1 - F, p.N_S - 1.0) * 2 * r / (4 * rs * re);
    }

    double J(double rm, int n, double T) const {
        const double c = n * eta * T * p.duty_cycle * std::pow(rm, p.alpha1) / N;
        return simpson(
            [&](double r) {
                const double x = c * std::pow(r, -p.alpha1);
                return (pm * std::pow(1 + x * ratio_main, -N) + (1 - pm) * std::pow(1 + x * ratio_side, -N)) * 2 * r /
                       (rmax * rmax - H * H);
            },
            H, rmax, 400);
    }

    double laplace(double rm, int n, double T) const {
        const double k = p.N_T - 1.0;
        return std::pow(1 - P_I + P_I * J(rm, n, T), k) - std::pow(1 - P_I, k);
    }

    double coverage(double T) const {
        return simpson(
            [&](double rm) {
                double s = 0.0;
                for (int n = 1; n <= N; ++n) {
                    const double binom = std::tgamma(N + 1.0) / (std::tgamma(n + 1.0) * std::tgamma(N - n + 1.0));
                    s += (n % 2 ? 1 : -1) * binom * laplace(rm, n, T);
                }
                return s * nearest_pdf(rm);
            },
            H, rmax, 1000);
    }
};

// Exact S-ES coverage for exponential (Omega = 0) fading with Binomial(N_S - 1, P) interferers.
double rayleigh_feeder_coverage(const SystemParams& p, double T, bool as_printed) {
    const double H = p.sphere.satellite_altitude_km, re = p.sphere.earth_radius_km, rs = re + H;
    const double rmax = max_slant_range(p.phi_s(), p.sphere);
    const double P = (rmax * rmax - H * H) / (4 * rs * re);
    const double span = rmax * rmax - H * H;
    const double ratio = p.p_n_w / p.p_s_w;
    const double a = p.alpha2;
    auto J = [&](double rm) {
        return simpson([&](double r) { return 2 * r / span / (1 + T * ratio * std::pow(rm / r, a)); }, H, rmax, 400);
    };
    const double N = p.N_S;
    if (!as_printed)
        return simpson([&](double rm) { return std::pow(1 - P + P * J(rm), N - 1) * 2 * rm / span; }, H, rmax, 600);
    // C(N, n) P^n (1-P)^(N-n-1) weights on n = 1 .. N-1
    auto w = [&](double j) { return (std::pow(1 - P + P * j, N) - std::pow(1 - P, N) - std::pow(P * j, N)) / (1 - P); };
    return 1 - w(1.0) + simpson([&](double rm) { return w(J(rm)) * 2 * rm / span; }, H, rmax, 600);
}

}  // namespace

TEST_CASE("uplink Laplace transform against a direct evaluation") {
    SystemParams p;
    const UplinkOracle o(p);
    for (double rm : {400.0, 405.0, 410.0})
        for (int n : {1, 2})
            for (double T : {0.1, 3.0, 100.0}) {
                CAPTURE(rm);
                CAPTURE(n);
                CAPTURE(T);
                CHECK(laplace_interference_ts(rm, n, T, p) == doctest::Approx(o.laplace(rm, n, T)).epsilon(1e-8));
            }
    CHECK_THROWS_AS(laplace_interference_ts(390.0, 1, 1.0, p), DomainError);
    CHECK_THROWS_AS(laplace_interference_ts(405.0, 3, 1.0, p), DomainError);
}

TEST_CASE("T-S coverage against a direct double integral") {
    for (TargetGain g : {TargetGain::main_lobe, TargetGain::device_only}) {
        for (double phi : {15.0, 25.0}) {
            SystemParams p;
            p.target_gain = g;
            p.antenna.satellite_beamwidth = deg_to_rad(phi);
            p.Rc_km = 300.0;
            const UplinkOracle o(p);
            CHECK(p.main_gain_ratio() == doctest::Approx(o.ratio_main));
            CHECK(p.side_gain_ratio() == doctest::Approx(o.ratio_side));
            for (double Tdb : {-10.0, 5.0, 15.0}) {
                CAPTURE(phi);
                CAPTURE(Tdb);
                const auto r = coverage_ts(db_to_linear(Tdb), p);
                CHECK(r.value == doctest::Approx(o.coverage(db_to_linear(Tdb))).epsilon(1e-7));
                CHECK(r.numeric_error_bound < 1e-8);
            }
        }
    }
}

TEST_CASE("T-S coverage limits and switches") {
    SystemParams p;
    const double P0 = p_zero(p.sphere, p.phi_s(), p.N_S);
    const double P_I = interferer_success_prob(p.sphere, p.Rc_km, p.phi_s()).value;
    // vanishing threshold: served and at least one interferer in view
    CHECK(coverage_ts(1e-12, p).value == doctest::Approx((1 - P0) * (1 - std::pow(1 - P_I, p.N_T - 1.0))).epsilon(1e-9));

    AnalysisOptions with_empty;
    with_empty.include_empty_interference_term = true;
    CHECK(coverage_ts(1e-12, p, with_empty).value == doctest::Approx(1 - P0).epsilon(1e-9));
    SystemParams lone = p;
    lone.N_T = 1;
    for (double T : {0.1, 10.0, 1e4}) CHECK(coverage_ts(T, lone, with_empty).value == doctest::Approx(1 - P0).epsilon(1e-12));
    CHECK(coverage_ts(1.0, lone).value == 0.0);

    AnalysisOptions printed;
    printed.serving_density = ServingDensity::as_printed;
    CHECK(coverage_ts(2.0, p, printed).value == doctest::Approx((1 - P0) * coverage_ts(2.0, p).value).epsilon(1e-9));

    // nonincreasing in the threshold
    double prev = 1.0;
    for (double Tdb = -20; Tdb <= 30; Tdb += 2.5) {
        const double v = coverage_ts(db_to_linear(Tdb), p).value;
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    CHECK_THROWS_AS(coverage_ts(-1.0, p), DomainError);
}

TEST_CASE("T-S diagnostics report a clamped footprint ratio") {
    SystemParams p;
    p.Rc_km = 100.0;
    p.antenna.satellite_beamwidth = deg_to_rad(35.0);
    const auto r = coverage_ts(1.0, p);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].find("clamped") != std::string::npos);
}

TEST_CASE("S-ES coverage is exact for exponential fading") {
    for (double phi : {15.0, 25.0, 35.0}) {
        SystemParams p;
        p.sr.omega = 0.0;
        p.antenna.satellite_beamwidth = deg_to_rad(phi);
        for (double Tdb : {-15.0, 0.0, 10.0}) {
            CAPTURE(phi);
            CAPTURE(Tdb);
            const double T = db_to_linear(Tdb);
            AnalysisOptions binom;
            binom.feeder_weights = FeederWeights::binomial;
            CHECK(coverage_ses(T, p, binom).value == doctest::Approx(rayleigh_feeder_coverage(p, T, false)).epsilon(1e-8));
            CHECK(coverage_ses(T, p).value == doctest::Approx(rayleigh_feeder_coverage(p, T, true)).epsilon(1e-8));
        }
    }
}

TEST_CASE("S-ES coverage properties") {
    SystemParams p;
    double prev = 1.0;
    for (double Tdb = -20; Tdb <= 15; Tdb += 2.5) {
        const auto r = coverage_ses(db_to_linear(Tdb), p);
        CHECK(r.value <= prev + 1e-12);
        CHECK(r.value > 0.0);
        CHECK(r.series_terms_used >= 1);
        prev = r.value;
    }
    CHECK(coverage_ses(1e-9, p).value == doctest::Approx(1.0).epsilon(1e-6));
    SystemParams lone = p;
    lone.N_S = 1;
    CHECK(coverage_ses(10.0, lone).value == doctest::Approx(1.0));
    const double lap = laplace_interference_ses(405.0, 1, 0, 1.0, p);
    CHECK(lap > 0.0);
    CHECK(lap < 1.0);
}

TEST_CASE("E2E coverage is the product of the links") {
    SystemParams p;
    for (double T : {0.1, 1.0, 10.0}) {
        const auto e = coverage_e2e(T, p);
        CHECK(e.value == doctest::Approx(coverage_ts(T, p).value * coverage_ses(T, p).value).epsilon(1e-14));
    }
}

TEST_CASE("T-S rate integrates the coverage curve") {
    SystemParams p;
    const double direct = simpson([&](double t) { return coverage_ts(std::expm1(t * std::numbers::ln2), p).value; }, 0.0,
                                  60.0, 1200);
    const auto r = aer_ts(p);
    CHECK(r.value == doctest::Approx(direct).epsilon(1e-5));
    AnalysisOptions with_empty;
    with_empty.include_empty_interference_term = true;
    const auto e = aer_ts(p, with_empty);
    CHECK(e.value == r.value);
    CHECK(e.diagnostics.size() == 1);
}

TEST_CASE("S-ES rate without interferers is the noise-limited rate") {
    SystemParams p;
    p.N_S = 1;
    const double H = p.sphere.satellite_altitude_km, rmax = p.r_max_km();
    const double a = p.p_s_w * p.feeder_link_gain() * path_loss(p.f2_hz, p.alpha2, 1.0) / p.sigma2_w;
    const double direct = simpson(
        [&](double r) {
            const double snr = a * std::pow(r, -p.alpha2);
            return integrate_semi_infinite([&](double x) { return std::log2(1 + snr * x) * sr_power_pdf(x, p.sr); },
                                           {1e-14, 1e-11, 500}) *
                   2 * r / (rmax * rmax - H * H);
        },
        H, rmax, 200);
    CHECK(aer_ses(p).value == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("S-ES rate grows with satellite power") {
    SystemParams p;
    double prev = 0.0;
    for (double ps : {2.0, 6.0, 10.0, 20.0}) {
        p.p_s_w = ps;
        const double v = aer_ses(p).value;
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("option names round-trip") {
    for (auto d : {ServingDensity::conditional, ServingDensity::as_printed}) CHECK(serving_density_from_string(to_string(d)) == d);
    for (auto w : {FeederWeights::as_printed, FeederWeights::binomial}) CHECK(feeder_weights_from_string(to_string(w)) == w);
    CHECK_THROWS_AS(serving_density_from_string("x"), DomainError);
}
