#include "leocov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "leocov/distance.hpp"

namespace leocov {

const char* to_string(ServingDensity d) { return d == ServingDensity::conditional ? "conditional" : "as_printed"; }
const char* to_string(FeederWeights w) { return w == FeederWeights::as_printed ? "as_printed" : "binomial"; }

ServingDensity serving_density_from_string(const std::string& s) {
    if (s == "conditional") return ServingDensity::conditional;
    if (s == "as_printed") return ServingDensity::as_printed;
    throw DomainError("unknown serving density '" + s + "' (expected conditional or as_printed)");
}

FeederWeights feeder_weights_from_string(const std::string& s) {
    if (s == "as_printed") return FeederWeights::as_printed;
    if (s == "binomial") return FeederWeights::binomial;
    throw DomainError("unknown feeder weights '" + s + "' (expected as_printed or binomial)");
}

namespace {

void finalize_probability(MetricResult& r) {
    if (!std::isfinite(r.value)) throw DomainError("probability evaluated to a non-finite value");
    if (r.value < 0.0 || r.value > 1.0) {
        const double over = r.value < 0.0 ? -r.value : r.value - 1.0;
        std::string msg = "clamped probability " + std::to_string(r.value) + " into [0, 1]";
        if (over > r.numeric_error_bound) msg += " (overshoot exceeds the error bound)";
        r.diagnostics.push_back(msg);
        r.value = std::clamp(r.value, 0.0, 1.0);
    }
}

// Everything the uplink expressions need, derived once per parameter set.
class UplinkModel {
public:
    UplinkModel(const SystemParams& p, const AnalysisOptions& o) : p_(p), o_(o) {
        p.validate();
        H_ = p.sphere.satellite_altitude_km;
        rmax_ = p.r_max_km();
        span_ = (rmax_ - H_) * (rmax_ + H_);
        const auto pi = interferer_success_prob(p.sphere, p.Rc_km, p.phi_s());
        P_I_ = pi.value;
        if (pi.clamped())
            diagnostics_.push_back("footprint exceeds the device region: P_I = " + std::to_string(pi.raw) +
                                   " clamped to 1");
        others_ = p.N_T - 1;
        pm_ = p.antenna.device_threshold_angle / (2.0 * std::numbers::pi);
        ratio_main_ = p.main_gain_ratio();
        ratio_side_ = p.side_gain_ratio();
        N_ = p.nakagami.m;
        eta_ = p.nakagami.eta();
        P0_ = p_zero(p.sphere, p.phi_s(), p.N_S);
        nearest_ = std::make_unique<DistanceDistribution>(dist_nearest_satellite(p.sphere, p.N_S));
    }

    double P0() const { return P0_; }
    double rmax() const { return rmax_; }
    double H() const { return H_; }
    std::vector<std::string>& diagnostics() { return diagnostics_; }

    // r_n integral of the two-state directivity mixture, in [0, 1].
    double inner(double r_m, int n, double T) {
        if (T == 0.0) return 1.0;
        const double a = p_.alpha1;
        const double c = n * eta_ * T * p_.duty_cycle * std::pow(r_m, a) / N_;
        auto g = [&](double r) {
            const double x = c * std::pow(r, -a);
            const double mix = pm_ * std::pow(1.0 + x * ratio_main_, -N_) +
                               (1.0 - pm_) * std::pow(1.0 + x * ratio_side_, -N_);
            return mix * 2.0 * r / span_;
        };
        const auto q = integrate_detailed(g, H_, rmax_, o_.inner);
        max_inner_err_ = std::max(max_inner_err_, q.error);
        return std::clamp(q.value, 0.0, 1.0);
    }

    double laplace(double r_m, int n, double T, bool empty_term) {
        if (others_ == 0) return empty_term ? 1.0 : 0.0;
        const double J = inner(r_m, n, T);
        return binomial_power_sum(others_, P_I_, J, empty_term ? 0u : 1u, others_);
    }

    // Alternating Alzer sum: P(SINR >= T | serving distance r_m).
    double conditional_ccdf(double r_m, double T, bool empty_term) {
        CompensatedSum acc;
        for (int n = 1; n <= N_; ++n) {
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            acc.add(sign * binomial(N_, n) * laplace(r_m, n, T, empty_term));
        }
        return acc.value();
    }

    double serving_weight(double r_m) const {
        const double f = nearest_->pdf(r_m);
        return o_.serving_density == ServingDensity::conditional ? f / (1.0 - P0_) : f;
    }

    // (1 - P0) * integral over the serving distance.
    QuadratureResult coverage(double T, bool empty_term, const QuadratureSpec& spec) {
        auto g = [&](double r) { return conditional_ccdf(r, T, empty_term) * serving_weight(r); };
        auto q = integrate_detailed(g, H_, rmax_, spec);
        q.value *= 1.0 - P0_;
        q.error *= 1.0 - P0_;
        return q;
    }

    // Error carried into a coverage value by the inner integrals.
    double propagated_inner_error() const {
        return std::pow(2.0, N_) * std::max(1.0, others_ * P_I_) * max_inner_err_;
    }

private:
    const SystemParams& p_;
    const AnalysisOptions& o_;
    double H_ = 0, rmax_ = 0, span_ = 0, P_I_ = 0, pm_ = 0, ratio_main_ = 1, ratio_side_ = 1, eta_ = 1, P0_ = 0;
    unsigned others_ = 0;
    int N_ = 1;
    double max_inner_err_ = 0.0;
    std::unique_ptr<DistanceDistribution> nearest_;
    std::vector<std::string> diagnostics_;
};

double zeta(int k) { return std::exp(-std::lgamma(k + 2.0) / (k + 1.0)); }

class FeederModel {
public:
    FeederModel(const SystemParams& p, const AnalysisOptions& o) : p_(p), o_(o) {
        p.validate();
        H_ = p.sphere.satellite_altitude_km;
        rmax_ = p.r_max_km();
        span_ = (rmax_ - H_) * (rmax_ + H_);
        P_ = satellite_success_prob(p.sphere, p.phi_s());
        bd_ = p.sr.beta() - p.sr.delta();
    }

    double H() const { return H_; }
    double rmax() const { return rmax_; }
    double bd() const { return bd_; }
    double pdf(double r) const { return 2.0 * r / span_; }

    // r_n integral of the SR Laplace transform for scale s_coeff = t0' / r_m'^alpha2.
    double inner(double r_m, double s_coeff) {
        if (s_coeff == 0.0) return 1.0;
        const double a = p_.alpha2;
        const double t0 = s_coeff * std::pow(r_m, a);
        auto g = [&](double r) { return sr_mgf(t0 * std::pow(r, -a), p_.sr) * 2.0 * r / span_; };
        const auto q = integrate_detailed(g, H_, rmax_, o_.inner);
        max_inner_err_ = std::max(max_inner_err_, q.error);
        return std::clamp(q.value, 0.0, 1.0);
    }

    double weights(double J, FeederWeights w, bool empty_term) const {
        const unsigned n = p_.N_S;
        if (n <= 1) return empty_term ? 1.0 : 0.0;
        const unsigned lo = empty_term ? 0u : 1u;
        if (w == FeederWeights::binomial) return binomial_power_sum(n - 1, P_, J, lo, n - 1);
        return binomial_power_sum(n, P_, J, lo, n - 1) / (1.0 - P_);
    }

    double propagated_inner_error() const { return std::max(1.0, p_.N_S * P_) * max_inner_err_; }

private:
    const SystemParams& p_;
    const AnalysisOptions& o_;
    double H_ = 0, rmax_ = 0, span_ = 0, P_ = 0, bd_ = 1;
    double max_inner_err_ = 0.0;
};

}  // namespace

double laplace_interference_ts(double r_m, int n, double T1, const SystemParams& params, const AnalysisOptions& opts) {
    if (n < 1 || n > params.nakagami.m) throw DomainError("laplace_interference_ts: n outside [1, N]");
    if (!(T1 >= 0.0)) throw DomainError("laplace_interference_ts: negative threshold");
    UplinkModel m(params, opts);
    if (r_m < m.H() || r_m > m.rmax()) throw DomainError("laplace_interference_ts: r_m outside [H, r_max]");
    return m.laplace(r_m, n, T1, opts.include_empty_interference_term);
}

double laplace_interference_ses(double r_m_prime, int t, int k, double T2, const SystemParams& params,
                                const AnalysisOptions& opts) {
    if (t < 0 || k < 0) throw DomainError("laplace_interference_ses: negative index");
    if (!(T2 >= 0.0)) throw DomainError("laplace_interference_ses: negative threshold");
    FeederModel m(params, opts);
    if (r_m_prime < m.H() || r_m_prime > m.rmax())
        throw DomainError("laplace_interference_ses: r_m' outside [H, r_max]");
    const double s = t * zeta(k) * m.bd() * T2 * params.p_n_w / params.p_s_w;
    return m.weights(m.inner(r_m_prime, s), opts.feeder_weights, opts.include_empty_interference_term);
}

MetricResult coverage_ts(double T1, const SystemParams& params, const AnalysisOptions& opts) {
    if (!(T1 >= 0.0)) throw DomainError("coverage_ts: threshold must be nonnegative");
    UplinkModel m(params, opts);
    MetricResult r;
    if (std::isinf(T1)) {
        r.diagnostics = m.diagnostics();
        return r;
    }
    const auto q = m.coverage(T1, opts.include_empty_interference_term, opts.middle);
    r.value = q.value;
    r.numeric_error_bound = q.error + (1.0 - m.P0()) * m.propagated_inner_error();
    r.diagnostics = m.diagnostics();
    finalize_probability(r);
    return r;
}

MetricResult coverage_ses(double T2, const SystemParams& params, const AnalysisOptions& opts) {
    if (!(T2 >= 0.0)) throw DomainError("coverage_ses: threshold must be nonnegative");
    FeederModel m(params, opts);
    const bool empty = opts.include_empty_interference_term;
    const double ratio = params.p_n_w / params.p_s_w;
    const double w0 = m.weights(1.0, opts.feeder_weights, empty);
    MetricResult r;
    double err = 0.0;

    auto term = [&](std::size_t kk) -> double {
        const int k = static_cast<int>(kk);
        const double ck = sr_cdf_coefficient(k, params.sr);
        if (ck == 0.0) return 0.0;
        const double z = zeta(k);
        auto g = [&](double rm) {
            CompensatedSum acc;
            for (int t = 1; t <= k + 1; ++t) {
                const double sign = (t % 2 == 1) ? -1.0 : 1.0;
                const double s = t * z * m.bd() * T2 * ratio;
                acc.add(sign * binomial(k + 1, t) * m.weights(m.inner(rm, s), opts.feeder_weights, empty));
            }
            return acc.value() * m.pdf(rm);
        };
        const auto q = integrate_detailed(g, m.H(), m.rmax(), opts.middle);
        err += std::abs(ck) * q.error;
        return ck * (w0 + q.value);
    };
    const auto s = sum_series(term, opts.series);
    r.value = 1.0 - s.value;
    r.series_terms_used = s.terms_used;
    r.numeric_error_bound = err + m.propagated_inner_error() + opts.series.rel_tail_tol * std::abs(s.value);
    finalize_probability(r);
    return r;
}

MetricResult coverage_e2e(double T, const SystemParams& params, const AnalysisOptions& opts) {
    const auto a = coverage_ts(T, params, opts);
    const auto b = coverage_ses(T, params, opts);
    MetricResult r;
    r.value = a.value * b.value;
    r.numeric_error_bound = b.value * a.numeric_error_bound + a.value * b.numeric_error_bound;
    r.series_terms_used = b.series_terms_used;
    r.diagnostics = a.diagnostics;
    r.diagnostics.insert(r.diagnostics.end(), b.diagnostics.begin(), b.diagnostics.end());
    finalize_probability(r);
    return r;
}

MetricResult aer_ts(const SystemParams& params, const AnalysisOptions& opts) {
    UplinkModel m(params, opts);
    MetricResult r;
    r.diagnostics = m.diagnostics();
    if (opts.include_empty_interference_term)
        r.diagnostics.push_back("empty-interference term ignored for the T-S rate (noise-free rate would diverge)");
    double mid_err = 0.0;
    auto ccdf = [&](double t) {
        const double T = std::expm1(t * std::numbers::ln2);
        if (std::isinf(T)) return 0.0;
        const auto q = m.coverage(T, false, opts.middle);
        mid_err = std::max(mid_err, q.error);
        return q.value;
    };
    const auto q = integrate_semi_infinite_detailed(ccdf, opts.outer);
    r.value = q.value;
    r.numeric_error_bound = q.error + mid_err + m.propagated_inner_error();
    return r;
}

MetricResult aer_ses(const SystemParams& params, const AnalysisOptions& opts) {
    FeederModel m(params, opts);
    const double ratio = params.p_n_w / params.p_s_w;
    // signal-to-noise scale: p_s D l2(r) / sigma^2 = snr_coeff * r^-alpha2
    const double snr_coeff =
        params.p_s_w * params.feeder_link_gain() * path_loss(params.f2_hz, params.alpha2, 1.0) / params.sigma2_w;
    double mid_err = 0.0;
    std::size_t terms = 0;

    // The leading "1 - sum_k c_k" vanishes identically (the c_k sum to one),
    // so it is dropped rather than cancelled numerically at large t.
    auto ccdf = [&](double tt) {
        const double T = std::expm1(tt * std::numbers::ln2);
        if (std::isinf(T)) return 0.0;
        auto term = [&](std::size_t kk) -> double {
            const int k = static_cast<int>(kk);
            const double ck = sr_cdf_coefficient(k, params.sr);
            if (ck == 0.0) return 0.0;
            const double z = zeta(k);
            auto g = [&](double rm) {
                CompensatedSum acc;
                const double inv_snr = std::pow(rm, params.alpha2) / snr_coeff;
                for (int u = 1; u <= k + 1; ++u) {
                    const double sign = (u % 2 == 1) ? 1.0 : -1.0;
                    const double s = u * z * m.bd() * T;
                    const double L = m.weights(m.inner(rm, s * ratio), FeederWeights::binomial, true);
                    acc.add(sign * binomial(k + 1, u) * L * std::exp(-s * inv_snr));
                }
                return acc.value() * m.pdf(rm);
            };
            const auto q = integrate_detailed(g, m.H(), m.rmax(), opts.middle);
            mid_err = std::max(mid_err, std::abs(ck) * q.error);
            return ck * q.value;
        };
        const auto s = sum_series(term, opts.series);
        terms = std::max(terms, s.terms_used);
        return s.value;
    };
    const auto q = integrate_semi_infinite_detailed(ccdf, opts.outer);
    MetricResult r;
    r.value = q.value;
    r.numeric_error_bound = q.error + mid_err + m.propagated_inner_error();
    r.series_terms_used = terms;
    return r;
}

}  // namespace leocov
