#include "leocov/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace leocov {

namespace {

// Kronrod abscissae on [0,1] (QUADPACK qk15); odd entries are the Gauss nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * wgk[7];
    double gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw DomainError("integrand is not finite at " + std::to_string(std::isfinite(f1) ? c + dx : c - dx));
        kron += wgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
    }
    if (!std::isfinite(fc)) throw DomainError("integrand is not finite at " + std::to_string(c));
    return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
}

void SeriesSpec::validate() const {
    if (!(rel_tail_tol > 0.0)) throw DomainError("rel_tail_tol must be positive");
    if (max_terms < 1) throw DomainError("max_terms must be >= 1");
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: x must be positive");
    return std::lgamma(x);
}

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: x must be positive");
    return std::tgamma(x);
}

double lower_incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("lower_incomplete_gamma: a must be positive");
    if (!(x >= 0.0)) throw DomainError("lower_incomplete_gamma: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::tgamma(a);
    return boost::math::tgamma_lower(a, x);
}

double upper_incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("upper_incomplete_gamma: a must be positive");
    if (!(x >= 0.0)) throw DomainError("upper_incomplete_gamma: x must be nonnegative");
    if (x == 0.0) return std::tgamma(a);
    if (std::isinf(x)) return 0.0;
    return boost::math::tgamma(a, x);
}

double pochhammer(double x, unsigned n) {
    double p = 1.0;
    for (unsigned i = 0; i < n; ++i) {
        const double f = x + static_cast<double>(i);
        if (f == 0.0) return 0.0;
        p *= f;
    }
    return p;
}

double ln_binomial(unsigned n, unsigned k) {
    if (k > n) throw DomainError("ln_binomial: k > n");
    if (k == 0 || k == n) return 0.0;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(unsigned n, unsigned k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c < 9007199254740992.0 ? std::round(c) : c;
}

double kummer_1f1(double a, double b, double x, const SeriesSpec& spec) {
    if (b <= 0.0 && std::floor(b) == b) throw DomainError("kummer_1f1: b is a nonpositive integer");
    if (x == 0.0) return 1.0;
    // Summed in long double to machine precision; SeriesSpec only bounds the term
    // count. For x < 0 the series alternates and loses about log10(e^|x|)
    // digits, acceptable for the |x| <~ 10 used here.
    long double term = 1.0L;
    long double sum = 1.0L;
    long double comp = 0.0L;
    std::size_t small = 0;
    const std::size_t limit = std::max<std::size_t>(spec.max_terms, static_cast<std::size_t>(4.0 * std::abs(x)) + 50);
    for (std::size_t k = 0; k < limit; ++k) {
        const long double kk = static_cast<long double>(k);
        term *= (a + kk) / (b + kk) * x / (kk + 1.0L);
        const long double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        if (term == 0.0L) return static_cast<double>(sum + comp);
        if (std::abs(term) <= 1e-19L * std::abs(sum + comp)) {
            if (++small >= spec.consecutive_small_terms) return static_cast<double>(sum + comp);
        } else {
            small = 0;
        }
    }
    throw SeriesError("kummer_1f1: series did not converge", static_cast<double>(sum + comp), limit);
}

QuadratureResult integrate_detailed(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureSpec& spec) {
    spec.validate();
    if (!(lo <= hi)) throw DomainError("integrate: lo must not exceed hi");
    if (lo == hi) return {0.0, 0.0, 0};

    std::priority_queue<Segment> heap;
    Segment first = gk15(f, lo, hi);
    heap.push(first);
    double total = first.value;
    double err = first.error;
    std::size_t evals = 15;
    std::size_t pieces = 1;

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (err > tolerance()) {
        if (pieces >= spec.max_subdivisions) {
            throw ToleranceError("integrate: tolerance not met on [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "], error " + std::to_string(err),
                                 total, err);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval cannot be split further in double precision
            throw ToleranceError("integrate: interval collapsed before tolerance was met", total, err);
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        evals += 30;
        ++pieces;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from scratch to shed the drift of the running updates.
    CompensatedSum v;
    CompensatedSum e;
    while (!heap.empty()) {
        v.add(heap.top().value);
        e.add(heap.top().error);
        heap.pop();
    }
    return {v.value(), e.value(), evals};
}

double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec) {
    return integrate_detailed(f, lo, hi, spec).value;
}

QuadratureResult integrate_semi_infinite_detailed(const std::function<double(double)>& f,
                                                  const QuadratureSpec& spec) {
    auto g = [&f](double u) {
        const double one_minus = 1.0 - u;
        const double t = u / one_minus;
        const double v = f(t);
        if (v == 0.0) return 0.0;
        return v / (one_minus * one_minus);
    };
    return integrate_detailed(g, 0.0, 1.0, spec);
}

double integrate_semi_infinite(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    return integrate_semi_infinite_detailed(f, spec).value;
}

SeriesResult sum_series(const std::function<double(std::size_t)>& term, const SeriesSpec& spec) {
    spec.validate();
    CompensatedSum acc;
    std::size_t small = 0;
    for (std::size_t k = 0; k < spec.max_terms; ++k) {
        const double t = term(k);
        if (!std::isfinite(t)) throw SeriesError("sum_series: non-finite term", acc.value(), k);
        acc.add(t);
        if (std::abs(t) <= spec.rel_tail_tol * std::abs(acc.value())) {
            if (++small >= spec.consecutive_small_terms) return {acc.value(), k + 1};
        } else {
            small = 0;
        }
    }
    throw SeriesError("sum_series: max_terms exhausted", acc.value(), spec.max_terms);
}

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

double binomial_power_sum(unsigned n, double p, double x, unsigned lo, unsigned hi) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_power_sum: p outside [0,1]");
    if (!(x >= 0.0)) throw DomainError("binomial_power_sum: x must be nonnegative");
    hi = std::min(hi, n);
    if (lo > hi) return 0.0;
    if (x == 0.0 || p == 0.0) {
        if (lo != 0) return 0.0;
        return x == 0.0 ? std::pow(1.0 - p, n) : 1.0;
    }
    if (p == 1.0) return hi == n ? std::pow(x, n) : 0.0;

    const double lp = std::log(p) + std::log(x);
    const double lq = std::log1p(-p);
    auto log_term = [&](unsigned k) { return ln_binomial(n, k) + k * lp + (n - k) * lq; };

    const double pc = p * x / (1.0 - p + p * x);
    double m = std::floor((n + 1.0) * pc);
    m = std::clamp(m, static_cast<double>(lo), static_cast<double>(hi));
    const unsigned mode = static_cast<unsigned>(m);
    const double peak = log_term(mode);
    if (!std::isfinite(peak)) return peak > 0 ? std::numeric_limits<double>::infinity() : 0.0;

    // The combined mass is log-concave, so terms fall monotonically away from
    // the (clamped) mode and the walk can stop at the first negligible term.
    constexpr double cutoff = -39.1439465808987777;  // ln(1e-17)
    CompensatedSum acc;
    acc.add(1.0);
    for (unsigned k = mode + 1; k <= hi; ++k) {
        const double d = log_term(k) - peak;
        if (d < cutoff) break;
        acc.add(std::exp(d));
    }
    for (unsigned k = mode; k > lo;) {
        --k;
        const double d = log_term(k) - peak;
        if (d < cutoff) break;
        acc.add(std::exp(d));
    }
    return std::exp(peak) * acc.value();
}

}  // namespace leocov
