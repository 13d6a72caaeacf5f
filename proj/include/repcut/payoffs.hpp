#pragma once

#include <concepts>
#include <variant>

namespace repcut {

// A reputational payoff family: V on [0,1], its slope, and whether it meets
// the increasing-and-convex career-concerns assumption.
template <class F>
concept ReputationFamily = requires(const F& f, double pi) {
    { f.value(pi) } -> std::convertible_to<double>;
    { f.slope(pi) } -> std::convertible_to<double>;
    { f.convex() } -> std::convertible_to<bool>;
    f.validate();
};

// V(pi) = pi^k, k >= 1.
struct PowerFamily {
    double exponent = 2.0;

    double value(double pi) const;
    double slope(double pi) const;
    bool convex() const noexcept { return true; }
    void validate() const;
    friend bool operator==(const PowerFamily&, const PowerFamily&) = default;
};

// Kinked value around a reputational benchmark:
//   V = v0 + b[(pi - bench)_+ - lambda (bench - pi)_+]
//          + kappa_plus/2 (pi - bench)_+^2 + kappa_minus/2 (bench - pi)_+^2
// slope() is the right derivative. Loss aversion (lambda > 1) breaks global
// convexity, which convex() reports.
struct LossAverseFamily {
    double v0 = 0.0;
    double bench_pi = 0.5;
    double slope_b = 1.0;
    double loss_aversion = 1.0;
    double kappa_plus = 0.0;
    double kappa_minus = 0.0;

    double value(double pi) const;
    double slope(double pi) const;
    double left_slope(double pi) const;
    bool convex() const noexcept;
    void validate() const;
    friend bool operator==(const LossAverseFamily&, const LossAverseFamily&) = default;
};

static_assert(ReputationFamily<PowerFamily>);
static_assert(ReputationFamily<LossAverseFamily>);

using PayoffFamily = std::variant<PowerFamily, LossAverseFamily>;

struct PayoffSpec {
    PayoffFamily family = PowerFamily{};
    double phi = 0.0;          // flow payoff from recommending risk
    double kappa_scale = 1.0;  // career-concern strength, multiplies V

    void validate() const;
    // True when kappa * V is increasing and convex.
    bool satisfies_career_assumption() const;
    friend bool operator==(const PayoffSpec&, const PayoffSpec&) = default;
};

// kappa * V(pi); rejects pi outside [0,1].
double eval_V(const PayoffSpec& spec, double pi);

// kappa * V'(pi) (right derivative at kinks).
double eval_V_slope(const PayoffSpec& spec, double pi);

// Outcome-contingent transfers after a risky recommendation:
// T(1,1) = beta1, T(1,0) = -beta0, T(0,.) = 0.
struct TransferSpec {
    double beta1 = 0.0;
    double beta0 = 0.0;
    bool limited_liability = false;

    void validate() const;
    bool ll_violation() const noexcept { return beta1 < 0.0 || beta0 != 0.0; }
    friend bool operator==(const TransferSpec&, const TransferSpec&) = default;
};

// alpha * beta1 - (1 - alpha) * beta0: the prior-averaged shift in the
// risky-safe advantage.
double transfer_wedge(const TransferSpec& t, double alpha);

// Expected transfer from a risky recommendation when the (observed) success
// probability is p.
double expected_transfer(const TransferSpec& t, double success_prob);

}  // namespace repcut
