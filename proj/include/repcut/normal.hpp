#pragma once

// Standard normal special functions. The cdf goes through erfc so that both
// tails keep full relative precision; log_sf switches to the asymptotic Mills
// ratio expansion once erfc would underflow.

namespace repcut::normal {

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double pdf(double x);
double log_pdf(double x);

// Phi(x); absolute error below 1e-12 on |x| <= 8, saturates at 0/1.
double cdf(double x);

// 1 - Phi(x) without cancellation.
double sf(double x);

// log(1 - Phi(x)); finite for every finite x.
double log_sf(double x);

inline double log_cdf(double x) { return log_sf(-x); }

// phi(x) / (1 - Phi(x)).
double hazard(double x);

}  // namespace repcut::normal
