#pragma once

// Independent reference computations. Nothing here calls the library's
// numerics; everything is rebuilt from the model primitives.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline long double pdf(long double x) { return std::exp(-0.5L * x * x) / std::sqrt(2.0L * 3.14159265358979323846L); }

// Composite Simpson in long double.
template <class F>
long double simpson(F&& f, long double a, long double b, int n = 20000) {
    const long double h = (b - a) / n;
    long double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
    return sum * h / 3.0L;
}

// Phi(x); the tail side is integrated directly so small values keep their
// relative accuracy.
inline double cdf(double x) {
    const long double ax = std::fabs(static_cast<long double>(x));
    const long double tail = simpson([](long double t) { return pdf(t); }, ax, ax + 12.0L, 6000);
    return static_cast<double>(x < 0 ? tail : 1.0L - tail);
}

inline double sf(double x) { return cdf(-x); }

struct Gaussian {
    double mu0 = 0.0, mu1 = 1.0, sh = 1.0, sl = 1.7;

    double sigma(bool high) const { return high ? sh : sl; }
    double mu(int omega) const { return omega ? mu1 : mu0; }
    double r(bool high, int omega, double c) const { return sf((c - mu(omega)) / sigma(high)); }
    double density(bool high, int omega, double s) const {
        const double z = (s - mu(omega)) / sigma(high);
        return std::exp(-0.5 * z * z) / (sigma(high) * std::sqrt(2.0 * M_PI));
    }
    double p(double alpha, double s, bool high = true) const {
        const double a = alpha * density(high, 1, s);
        return a / (a + (1.0 - alpha) * density(high, 0, s));
    }
};

struct Posteriors {
    double plus, minus, safe, l_plus, l_minus, l_safe;
};

inline double bayes(double pi, double ratio) { return pi * ratio / (pi * ratio + 1.0 - pi); }

inline Posteriors posteriors(const Gaussian& g, double pi, double alpha, double c) {
    Posteriors out{};
    out.l_plus = g.r(true, 1, c) / g.r(false, 1, c);
    out.l_minus = g.r(true, 0, c) / g.r(false, 0, c);
    const double safe_h = alpha * (1 - g.r(true, 1, c)) + (1 - alpha) * (1 - g.r(true, 0, c));
    const double safe_l = alpha * (1 - g.r(false, 1, c)) + (1 - alpha) * (1 - g.r(false, 0, c));
    out.l_safe = safe_h / safe_l;
    out.plus = bayes(pi, out.l_plus);
    out.minus = bayes(pi, out.l_minus);
    out.safe = bayes(pi, out.l_safe);
    return out;
}

// Frictionless advantage with V = kappa pi^k and posteriors at the conjecture.
inline double advantage(const Gaussian& g, double pi, double alpha, double s, double conj, double beta1 = 0.0,
                        double beta0 = 0.0, double phi = 0.0, double k = 2.0, double kappa = 1.0) {
    const Posteriors q = posteriors(g, pi, alpha, conj);
    auto V = [&](double x) { return kappa * std::pow(x, k); };
    const double p = g.p(alpha, s);
    return phi + p * (V(q.plus) - V(q.safe) + beta1) + (1 - p) * (V(q.minus) - V(q.safe) - beta0);
}

// Bisection on an oracle function with a sign change on [a, b].
template <class F>
double bisect(F&& f, double a, double b, int iters = 200) {
    double fa = f(a);
    for (int i = 0; i < iters; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Pr(exactly k-1 of the other members vote yes), by enumerating all profiles.
inline double pivotality_enumerated(const std::vector<double>& yes, std::size_t member, int k) {
    std::vector<double> others;
    for (std::size_t j = 0; j < yes.size(); ++j)
        if (j != member) others.push_back(yes[j]);
    const std::uint32_t profiles = 1u << others.size();
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < profiles; ++mask) {
        int votes = 0;
        double prob = 1.0;
        for (std::size_t j = 0; j < others.size(); ++j) {
            const bool y = (mask >> j) & 1u;
            votes += y;
            prob *= y ? others[j] : 1.0 - others[j];
        }
        if (votes == k - 1) total += prob;
    }
    return total;
}

// Hand-rolled generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
