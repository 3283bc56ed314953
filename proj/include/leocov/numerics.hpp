#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace leocov {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Thrown when an adaptive integral cannot meet its tolerance. The best
// estimate so far is kept so callers can decide whether to use it anyway.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate_(estimate), error_(error) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_; }

private:
    double estimate_;
    double error_;
};

class SeriesError : public std::runtime_error {
public:
    SeriesError(const std::string& what, double partial, std::size_t terms)
        : std::runtime_error(what), partial_(partial), terms_(terms) {}
    double partial_sum() const { return partial_; }
    std::size_t terms() const { return terms_; }

private:
    double partial_;
    std::size_t terms_;
};

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_subdivisions = 200;

    void validate() const;
};

struct SeriesSpec {
    double rel_tail_tol = 1e-9;
    std::size_t max_terms = 200;
    std::size_t consecutive_small_terms = 3;

    void validate() const;
};

// inner Laplace integrals
inline QuadratureSpec inner_quadrature() { return {1e-10, 1e-8, 200}; }
// outer CP / AER integrals
inline QuadratureSpec outer_quadrature() { return {1e-12, 1e-6, 200}; }

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

struct SeriesResult {
    double value = 0.0;
    std::size_t terms_used = 0;
};

double ln_gamma(double x);
double gamma_fn(double x);
double lower_incomplete_gamma(double a, double x);
double upper_incomplete_gamma(double a, double x);
double pochhammer(double x, unsigned n);
double ln_binomial(unsigned n, unsigned k);
double binomial(unsigned n, unsigned k);

// 1F1(a; b; x) by direct power series.
double kummer_1f1(double a, double b, double x, const SeriesSpec& spec = {});

// Adaptive G7/K15 with bisection of the worst interval.
QuadratureResult integrate_detailed(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureSpec& spec = {});
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

// [0, inf) mapped to [0, 1) through t = u / (1 - u). The integrand must decay
// faster than 1/t; nodes never touch u = 1 so no explicit truncation is made.
QuadratureResult integrate_semi_infinite_detailed(const std::function<double(double)>& f,
                                                  const QuadratureSpec& spec = {});
double integrate_semi_infinite(const std::function<double(double)>& f, const QuadratureSpec& spec = {});

SeriesResult sum_series(const std::function<double(std::size_t)>& term, const SeriesSpec& spec = {});

// Neumaier variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// sum_{k=lo}^{hi} C(n,k) p^k (1-p)^(n-k) x^k, evaluated in log space around the
// mode so that n in the tens of thousands does not overflow. x >= 0.
double binomial_power_sum(unsigned n, double p, double x, unsigned lo, unsigned hi);

}  // namespace leocov
