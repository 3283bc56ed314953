#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "leocov/numerics.hpp"
#include "leocov/params.hpp"

namespace leocov {

// Density used for the serving distance inside the T-S integrals.
enum class ServingDensity {
    conditional,  // nearest-satellite pdf divided by (1 - P0) on [H, r_max]
    as_printed,   // nearest-satellite pdf as is; counts (1 - P0) twice
};

// Interferer-count weights of the feeder-link Laplace transform.
enum class FeederWeights {
    as_printed,  // C(N_S, n) p^n (1-p)^(N_S-n-1)
    binomial,    // Binomial(N_S - 1, p)
};

struct AnalysisOptions {
    bool include_empty_interference_term = false;
    ServingDensity serving_density = ServingDensity::conditional;
    FeederWeights feeder_weights = FeederWeights::as_printed;
    QuadratureSpec inner = inner_quadrature();
    QuadratureSpec middle{1e-13, 1e-8, 200};
    QuadratureSpec outer = outer_quadrature();
    SeriesSpec series{};
};

struct MetricResult {
    double value = 0.0;
    double numeric_error_bound = 0.0;
    std::size_t series_terms_used = 0;
    std::vector<std::string> diagnostics;
};

const char* to_string(ServingDensity d);
const char* to_string(FeederWeights w);
ServingDensity serving_density_from_string(const std::string& s);
FeederWeights feeder_weights_from_string(const std::string& s);

// Laplace transform of the uplink interference at the serving satellite,
// evaluated at the n-th Alzer argument for threshold T1 (linear).
double laplace_interference_ts(double r_m, int n, double T1, const SystemParams& params,
                               const AnalysisOptions& opts = {});
// Laplace transform of the feeder-link interference at the ES for the t-th
// term of the k-th series coefficient.
double laplace_interference_ses(double r_m_prime, int t, int k, double T2, const SystemParams& params,
                                const AnalysisOptions& opts = {});

MetricResult coverage_ts(double T1, const SystemParams& params, const AnalysisOptions& opts = {});
MetricResult coverage_ses(double T2, const SystemParams& params, const AnalysisOptions& opts = {});
MetricResult coverage_e2e(double T, const SystemParams& params, const AnalysisOptions& opts = {});
// Rates in bits/s/Hz.
MetricResult aer_ts(const SystemParams& params, const AnalysisOptions& opts = {});
MetricResult aer_ses(const SystemParams& params, const AnalysisOptions& opts = {});

}  // namespace leocov
