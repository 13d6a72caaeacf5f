#include "repcut/normal.hpp"

#include <cmath>
#include <limits>

namespace repcut::normal {

namespace {

// Beyond this point erfc(x / sqrt 2) is still representable, but the series
// below is already accurate to ~1e-15 relative in the log.
constexpr double kAsymptoticStart = 30.0;

double log_sf_asymptotic(double x) {
    // log(1 - Phi(x)) = -x^2/2 - log(x sqrt(2 pi)) + log(1 - 1/x^2 + 3/x^4 - ...)
    const double inv2 = 1.0 / (x * x);
    double term = 1.0;
    double series = 0.0;
    for (int k = 1; k <= 6; ++k) {
        term *= -(2.0 * k - 1.0) * inv2;
        series += term;
    }
    return -0.5 * x * x - std::log(x) - kLogSqrt2Pi + std::log1p(series);
}

}  // namespace

double pdf(double x) { return std::exp(log_pdf(x)); }

double log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double cdf(double x) {
    if (std::isnan(x)) return x;
    return 0.5 * std::erfc(-x / kSqrt2);
}

double sf(double x) {
    if (std::isnan(x)) return x;
    return 0.5 * std::erfc(x / kSqrt2);
}

double log_sf(double x) {
    if (std::isnan(x)) return x;
    if (x == std::numeric_limits<double>::infinity()) return -std::numeric_limits<double>::infinity();
    if (x < -kAsymptoticStart) return std::log1p(-0.5 * std::erfc(-x / kSqrt2));
    if (x > kAsymptoticStart) return log_sf_asymptotic(x);
    return std::log(0.5 * std::erfc(x / kSqrt2));
}

double hazard(double x) {
    if (x == std::numeric_limits<double>::infinity()) return x;
    return std::exp(log_pdf(x) - log_sf(x));
}

}  // namespace repcut::normal
