#include "repcut/payoffs.hpp"

#include "repcut/errors.hpp"

#include <cmath>

namespace repcut {

double PowerFamily::value(double pi) const { return std::pow(pi, exponent); }

double PowerFamily::slope(double pi) const {
    if (exponent == 1.0) return 1.0;
    return exponent * std::pow(pi, exponent - 1.0);
}

void PowerFamily::validate() const {
    detail::require(std::isfinite(exponent) && exponent >= 1.0, "payoff.family.k", "must be >= 1");
}

double LossAverseFamily::value(double pi) const {
    const double gain = pi > bench_pi ? pi - bench_pi : 0.0;
    const double loss = pi < bench_pi ? bench_pi - pi : 0.0;
    return v0 + slope_b * (gain - loss_aversion * loss) + 0.5 * kappa_plus * gain * gain +
           0.5 * kappa_minus * loss * loss;
}

double LossAverseFamily::slope(double pi) const {
    if (pi >= bench_pi) return slope_b + kappa_plus * (pi - bench_pi);
    return loss_aversion * slope_b - kappa_minus * (bench_pi - pi);
}

double LossAverseFamily::left_slope(double pi) const {
    if (pi > bench_pi) return slope(pi);
    return loss_aversion * slope_b - kappa_minus * (bench_pi - pi);
}

bool LossAverseFamily::convex() const noexcept { return loss_aversion <= 1.0; }

void LossAverseFamily::validate() const {
    detail::require(std::isfinite(v0), "payoff.family.v0", "must be finite");
    detail::require(bench_pi >= 0.0 && bench_pi <= 1.0, "payoff.family.bench_pi", "must lie in [0,1]");
    detail::require(std::isfinite(slope_b) && slope_b > 0.0, "payoff.family.slope_b", "must be positive");
    detail::require(std::isfinite(loss_aversion) && loss_aversion >= 1.0, "payoff.family.loss_aversion",
                    "must be >= 1");
    detail::require(std::isfinite(kappa_plus) && kappa_plus >= 0.0, "payoff.family.kappa_plus", "must be >= 0");
    detail::require(std::isfinite(kappa_minus) && kappa_minus >= 0.0, "payoff.family.kappa_minus", "must be >= 0");
}

void PayoffSpec::validate() const {
    std::visit([](const auto& f) { f.validate(); }, family);
    detail::require(std::isfinite(phi), "payoff.phi", "must be finite");
    detail::require(std::isfinite(kappa_scale) && kappa_scale >= 0.0, "payoff.kappa", "must be >= 0");
}

bool PayoffSpec::satisfies_career_assumption() const {
    return std::visit([](const auto& f) { return f.convex(); }, family);
}

double eval_V(const PayoffSpec& spec, double pi) {
    detail::require(pi >= 0.0 && pi <= 1.0, "pi", "reputation must lie in [0,1]");
    return spec.kappa_scale * std::visit([pi](const auto& f) { return f.value(pi); }, spec.family);
}

double eval_V_slope(const PayoffSpec& spec, double pi) {
    detail::require(pi >= 0.0 && pi <= 1.0, "pi", "reputation must lie in [0,1]");
    return spec.kappa_scale * std::visit([pi](const auto& f) { return f.slope(pi); }, spec.family);
}

void TransferSpec::validate() const {
    detail::require(std::isfinite(beta1), "transfers.beta1", "must be finite");
    detail::require(std::isfinite(beta0) && beta0 >= 0.0, "transfers.beta0", "must be >= 0");
    if (limited_liability) {
        detail::require(beta1 >= 0.0, "transfers.beta1", "must be >= 0 under limited liability");
        detail::require(beta0 == 0.0, "transfers.beta0", "must be 0 under limited liability");
    }
}

double transfer_wedge(const TransferSpec& t, double alpha) {
    detail::require(alpha > 0.0 && alpha < 1.0, "beliefs.alpha", "must lie in (0,1)");
    return alpha * t.beta1 - (1.0 - alpha) * t.beta0;
}

double expected_transfer(const TransferSpec& t, double success_prob) {
    return success_prob * t.beta1 - (1.0 - success_prob) * t.beta0;
}

}  // namespace repcut
