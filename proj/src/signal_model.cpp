#include "repcut/signal_model.hpp"

#include "repcut/errors.hpp"
#include "repcut/normal.hpp"

#include <cmath>
#include <limits>

namespace repcut {

namespace {

void validate_sigmas(double sigma_h, double sigma_l) {
    detail::require(std::isfinite(sigma_h) && sigma_h > 0.0, "signal.sigma_h", "must be positive and finite");
    detail::require(std::isfinite(sigma_l) && sigma_l > 0.0, "signal.sigma_l", "must be positive and finite");
    detail::require(sigma_h <= sigma_l, "signal.sigma_h", "must not exceed sigma_l (high type is more informative)");
}

}  // namespace

SignalModel::SignalModel(double mu0, double mu1, double sigma_h, double sigma_l)
    : mu0_(mu0), mu1_(mu1), sigma_h_(sigma_h), sigma_l_(sigma_l) {
    detail::require(std::isfinite(mu0), "signal.mu0", "must be finite");
    detail::require(std::isfinite(mu1), "signal.mu1", "must be finite");
    detail::require(mu1 > mu0, "signal.mu1", "must exceed mu0");
    validate_sigmas(sigma_h, sigma_l);
}

SignalModel SignalModel::uninformative(double mu, double sigma_h, double sigma_l) {
    detail::require(std::isfinite(mu), "signal.mu0", "must be finite");
    validate_sigmas(sigma_h, sigma_l);
    return SignalModel(Unchecked{}, mu, mu, sigma_h, sigma_l);
}

SignalModel SignalModel::rebuild(double mu0, double mu1, double sigma_h, double sigma_l) const {
    if (mu0 == mu1) return uninformative(mu0, sigma_h, sigma_l);
    return SignalModel(mu0, mu1, sigma_h, sigma_l);
}

double SignalModel::log_density(Ability type, State state, double s) const {
    const double sd = sigma(type);
    return normal::log_pdf((s - mean(state)) / sd) - std::log(sd);
}

double SignalModel::log_survival(Ability type, State state, double c) const {
    return normal::log_sf((c - mean(state)) / sigma(type));
}

double SignalModel::log_cdf(Ability type, State state, double c) const {
    return normal::log_cdf((c - mean(state)) / sigma(type));
}

double SignalModel::log_likelihood_ratio(Ability type, double s) const {
    // [(s - mu0)^2 - (s - mu1)^2] / (2 sigma^2), kept linear in s so that
    // infinite signals stay well defined.
    const double gap = mu1_ - mu0_;
    if (gap == 0.0) return 0.0;
    const double sd = sigma(type);
    return gap * (s - 0.5 * (mu0_ + mu1_)) / (sd * sd);
}

double SignalModel::log_likelihood_ratio_slope(Ability type, double /*s*/) const {
    const double sd = sigma(type);
    return (mu1_ - mu0_) / (sd * sd);
}

double rec_frequency(const MlrpSignal& model, Ability type, State state, double c) {
    return std::exp(model.log_survival(type, state, c));
}

double success_prob_at(const MlrpSignal& model, double alpha, double c, Ability type) {
    detail::require(alpha > 0.0 && alpha < 1.0, "beliefs.alpha", "must lie in (0,1)");
    // logit p = logit alpha + log l(c)
    const double logit = std::log(alpha) - std::log1p(-alpha) + model.log_likelihood_ratio(type, c);
    if (logit >= 0.0) return 1.0 / (1.0 + std::exp(-logit));
    const double e = std::exp(logit);
    return e / (1.0 + e);
}

double success_prob_slope(const MlrpSignal& model, double alpha, double c, Ability type) {
    const double p = success_prob_at(model, alpha, c, type);
    return p * (1.0 - p) * model.log_likelihood_ratio_slope(type, c);
}

}  // namespace repcut
