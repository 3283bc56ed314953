#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "leocov/distance.hpp"
#include "leocov/montecarlo.hpp"

using namespace leocov;

namespace {

TrialConfig small(std::int64_t trials, unsigned threads = 1) {
    TrialConfig c;
    c.trials = trials;
    c.threads = threads;
    return c;
}

struct MeanSe {
    double mean, se;
};

template <class F>
MeanSe mean_of(std::size_t n, F value) {
    double s = 0, ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = value(i);
        s += v;
        ss += v * v;
    }
    const double m = s / n;
    return {m, std::sqrt((ss / n - m * m) / n)};
}

}  // namespace

TEST_CASE("trials do not depend on the thread count") {
    const auto a = run_uplink_trials(small(400, 1));
    const auto b = run_uplink_trials(small(400, 3));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::memcmp(&a[i].signal_w, &b[i].signal_w, sizeof(double)) == 0);
        CHECK(a[i].interference_w == b[i].interference_w);
        CHECK(a[i].interferers == b[i].interferers);
    }
    const auto fa = run_feeder_trials(small(2000, 1));
    const auto fb = run_feeder_trials(small(2000, 4));
    for (std::size_t i = 0; i < fa.size(); ++i) CHECK(fa[i].interference_w == fb[i].interference_w);
    // single trials reproduce the batch
    const auto one = simulate_uplink_trial(small(400), 123);
    CHECK(one.signal_w == a[123].signal_w);
    CHECK(one.interference_w == a[123].interference_w);
}

TEST_CASE("different seeds give different trials") {
    auto c1 = small(50), c2 = small(50);
    c2.seed = 2;
    const auto a = run_uplink_trials(c1);
    const auto b = run_uplink_trials(c2);
    int same = 0;
    for (std::size_t i = 0; i < a.size(); ++i) same += a[i].serving_distance_km == b[i].serving_distance_km;
    CHECK(same == 0);
}

TEST_CASE("uplink trials match the geometry") {
    const auto cfg = small(6000, 2);
    const auto& p = cfg.params;
    const auto t = run_uplink_trials(cfg);
    const double P0 = p_zero(p.sphere, p.phi_s(), p.N_S);
    const auto served = mean_of(t.size(), [&](std::size_t i) { return t[i].served ? 1.0 : 0.0; });
    CHECK(std::abs(served.mean - (1 - P0)) < 4 * served.se);

    // the footprint stays inside the device region, so interferers ~ Binomial(N_T - 1, P_I)
    std::vector<double> counts;
    for (const auto& x : t)
        if (x.served) counts.push_back(x.interferers);
    const double P_I = interferer_success_prob(p.sphere, p.Rc_km, p.phi_s()).value;
    const auto c = mean_of(counts.size(), [&](std::size_t i) { return counts[i]; });
    CHECK(std::abs(c.mean - (p.N_T - 1) * P_I) < 4 * c.se);
    for (const auto& x : t) {
        if (!x.served) {
            CHECK(x.serving_distance_km > p.r_max_km());
            CHECK(x.signal_w == 0.0);
        } else {
            CHECK(x.serving_distance_km >= p.sphere.satellite_altitude_km);
            CHECK(x.serving_distance_km <= p.r_max_km());
        }
    }
}

TEST_CASE("interferer distances follow the truncated law") {
    const auto cfg = small(1);
    const auto law = dist_interferer_to_serving_sat(cfg.params.sphere, cfg.params.phi_s());
    std::vector<double> d;
    for (std::int64_t i = 0; d.size() < 20000; ++i) simulate_uplink_trial(cfg, i, &d);
    std::sort(d.begin(), d.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double f = law.cdf(d[i]);
        ks = std::max({ks, f - double(i) / d.size(), double(i + 1) / d.size() - f});
    }
    CHECK(ks < 0.02);
}

TEST_CASE("feeder trials") {
    auto cfg = small(20000, 2);
    const auto& p = cfg.params;
    const double P = satellite_success_prob(p.sphere, p.phi_s());
    const auto t = run_feeder_trials(cfg);
    const auto c = mean_of(t.size(), [&](std::size_t i) { return double(t[i].interferers); });
    CHECK(std::abs(c.mean - (p.N_S - 1) * P) < 4 * c.se);
    for (const auto& x : t) {
        CHECK(x.target_distance_km <= p.r_max_km());
        CHECK(x.attempts == 1);
    }

    cfg.condition_on_nonempty_visible_set = true;
    const auto cond = run_feeder_trials(cfg);
    const double P0 = p_zero(p.sphere, p.phi_s(), p.N_S);
    const auto empty = mean_of(cond.size(), [&](std::size_t i) { return cond[i].first_draw_visible == 0 ? 1.0 : 0.0; });
    CHECK(std::abs(empty.mean - P0) < 4 * empty.se);
    for (const auto& x : cond) {
        CHECK(x.visible >= 1);
        CHECK(x.visible == x.interferers + 1);
    }
}

TEST_CASE("joint trials share the serving satellite") {
    const auto cfg = small(300);
    const auto t = run_joint_trials(cfg);
    for (const auto& x : t) {
        if (!x.uplink.served) continue;
        CHECK(x.feeder.target_distance_km == x.uplink.serving_distance_km);
        CHECK(x.feeder.signal_w > 0.0);
    }
}

TEST_CASE("duty cycle modes agree on the mean interference") {
    auto scaled = small(3000, 2), thinned = small(3000, 2);
    thinned.duty_cycle_mode = DutyCycleMode::thinning;
    thinned.params.duty_cycle = scaled.params.duty_cycle = 0.05;
    const auto a = run_uplink_trials(scaled);
    const auto b = run_uplink_trials(thinned);
    const auto ma = mean_of(a.size(), [&](std::size_t i) { return a[i].interference_w; });
    const auto mb = mean_of(b.size(), [&](std::size_t i) { return b[i].interference_w; });
    CHECK(std::abs(ma.mean - mb.mean) < 4 * std::hypot(ma.se, mb.se));
}

TEST_CASE("standard error shrinks as one over root n") {
    const double T = 1.0;
    const auto a = simulate_coverage_ses(T, small(20000, 2));
    const auto b = simulate_coverage_ses(T, small(40000, 2));
    CHECK(b.std_error / a.std_error == doctest::Approx(1 / std::sqrt(2.0)).epsilon(0.05));
    CHECK(a.trials_used == 20000);
    CHECK(a.seed == 1);
}

TEST_CASE("SINR and rate conventions") {
    SystemParams p;
    UplinkTrial u;
    u.served = true;
    u.signal_w = 1e-12;
    CHECK(uplink_sinr(u, p, false) == std::numeric_limits<double>::infinity());
    CHECK(uplink_sinr(u, p, true) == doctest::Approx(1e-12 / p.sigma2_w));
    u.served = false;
    CHECK(uplink_sinr(u, p, false) == 0.0);

    // a noise-free rate without interferers falls back to the SNR
    auto cfg = small(1);
    UplinkTrial lone;
    lone.served = true;
    lone.signal_w = 3 * p.sigma2_w;
    CHECK(rate_from_uplink({lone}, cfg).mean == doctest::Approx(2.0));

    const auto t = run_feeder_trials(small(3000, 2));
    auto on = small(3000), off = small(3000);
    on.noise_in_sinr = NoiseMode::on;
    off.noise_in_sinr = NoiseMode::off;
    CHECK(rate_from_feeder(t, on).mean < rate_from_feeder(t, off).mean);
    CHECK(rate_from_feeder(t, small(3000)).mean == rate_from_feeder(t, on).mean);
}

TEST_CASE("product of independent estimates") {
    const auto e = product_estimate({0.5, 0.01, 100, 1}, {0.2, 0.02, 50, 1});
    CHECK(e.mean == doctest::Approx(0.1));
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 4e-4 + 0.04 * 1e-4)));
    CHECK(e.trials_used == 50);
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_threads(3) == 3);
    setenv("LEOCOV_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    setenv("LEOCOV_THREADS", "junk", 1);
    CHECK(resolve_threads(0) >= 1);
    unsetenv("LEOCOV_THREADS");
}

TEST_CASE("mode names round-trip") {
    for (auto m : {NoiseMode::automatic, NoiseMode::on, NoiseMode::off}) CHECK(noise_mode_from_string(to_string(m)) == m);
    for (auto m : {DutyCycleMode::power_scaling, DutyCycleMode::thinning}) CHECK(duty_cycle_mode_from_string(to_string(m)) == m);
    for (auto m : {E2EMode::product, E2EMode::joint}) CHECK(e2e_mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(noise_mode_from_string("sometimes"), DomainError);
    CHECK_THROWS_AS(TrialConfig{.trials = 0}.validate(), DomainError);
}
