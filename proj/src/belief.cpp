#include "repcut/belief.hpp"

#include "repcut/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace repcut {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMaxLogRatio = 700.0;
const double kLogFloor = std::log(kOffPathFloor);

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Both arguments -inf means the event is impossible under either type and
// carries no information.
double log_ratio(double log_num, double log_den) {
    if (log_num == log_den) return 0.0;
    return std::clamp(log_num - log_den, -kMaxLogRatio, kMaxLogRatio);
}

double logistic_of(double logit) {
    if (logit >= 0.0) return 1.0 / (1.0 + std::exp(-logit));
    const double e = std::exp(logit);
    return e / (1.0 + e);
}

double update(double pi, double log_lr) { return logistic_of(std::log(pi) - std::log1p(-pi) + log_lr); }

// log-probabilities of the truncation events for one type at cutoff c, plus
// the log densities there (their negatives are the c-derivatives).
struct Truncation {
    double log_rec_good;   // log r(1 | 1)
    double log_rec_bad;    // log r(1 | 0)
    double log_safe_good;  // log r(0 | 1)
    double log_safe_bad;   // log r(0 | 0)
    double log_f_good;
    double log_f_bad;
};

Truncation truncation(const MlrpSignal& model, Ability type, double c) {
    return {model.log_survival(type, State::good, c), model.log_survival(type, State::bad, c),
            model.log_cdf(type, State::good, c),      model.log_cdf(type, State::bad, c),
            model.log_density(type, State::good, c),  model.log_density(type, State::bad, c)};
}

struct EventLog {
    double log_p = kNegInf;
    double dlog = 0.0;  // d log p / dc
};

// p = w_good * P(good) + w_bad * P(bad), where P is survival (risky events)
// or cdf (safe event). d/dc of survival is -f, of cdf is +f.
EventLog mixture(double w_good, double log_good, double w_bad, double log_bad, double log_f_good,
                 double log_f_bad, double density_sign) {
    EventLog e;
    if (w_good > 0.0) e.log_p = log_add(e.log_p, std::log(w_good) + log_good);
    if (w_bad > 0.0) e.log_p = log_add(e.log_p, std::log(w_bad) + log_bad);
    if (e.log_p == kNegInf) return e;
    double slope = 0.0;
    if (w_good > 0.0) slope += w_good * std::exp(log_f_good - e.log_p);
    if (w_bad > 0.0) slope += w_bad * std::exp(log_f_bad - e.log_p);
    e.dlog = density_sign * slope;
    return e;
}

EventLog event(const Truncation& t, double alpha, double eps, History h) {
    switch (h) {
        case History::safe:
            return mixture(alpha, t.log_safe_good, 1.0 - alpha, t.log_safe_bad, t.log_f_good, t.log_f_bad, 1.0);
        case History::success:
            return mixture((1.0 - eps) * alpha, t.log_rec_good, eps * (1.0 - alpha), t.log_rec_bad, t.log_f_good,
                           t.log_f_bad, -1.0);
        case History::failure:
            return mixture(eps * alpha, t.log_rec_good, (1.0 - eps) * (1.0 - alpha), t.log_rec_bad, t.log_f_good,
                           t.log_f_bad, -1.0);
        case History::unobserved:
            return mixture(alpha, t.log_rec_good, 1.0 - alpha, t.log_rec_bad, t.log_f_good, t.log_f_bad, -1.0);
    }
    return {};
}

struct RatioLog {
    double log_value = 0.0;
    double dlog = 0.0;
    bool off_path = false;
};

RatioLog compose(EventLog high, EventLog low, const double* exact_log_ratio) {
    RatioLog r;
    if (high.log_p < kLogFloor) {
        high = {kLogFloor, 0.0};
        r.off_path = true;
    }
    if (low.log_p < kLogFloor) {
        low = {kLogFloor, 0.0};
        r.off_path = true;
    }
    r.log_value = (!r.off_path && exact_log_ratio != nullptr) ? *exact_log_ratio : log_ratio(high.log_p, low.log_p);
    r.dlog = high.dlog - low.dlog;
    return r;
}

RatioLog history_ratio(const Truncation& th, const Truncation& tl, double alpha, double eps, History h) {
    // Without misclassification alpha cancels in the outcome ratios; use the
    // cancelled form so (1,1) and (1,0) agree exactly with outcome_llrs.
    double exact = 0.0;
    const double* exact_ptr = nullptr;
    if (eps == 0.0 && h == History::success) {
        exact = log_ratio(th.log_rec_good, tl.log_rec_good);
        exact_ptr = &exact;
    } else if (eps == 0.0 && h == History::failure) {
        exact = log_ratio(th.log_rec_bad, tl.log_rec_bad);
        exact_ptr = &exact;
    }
    return compose(event(th, alpha, eps, h), event(tl, alpha, eps, h), exact_ptr);
}

}  // namespace

void BeliefState::validate() const {
    detail::require(pi > 0.0 && pi < 1.0, "beliefs.pi", "must lie in (0,1)");
    detail::require(alpha > 0.0 && alpha < 1.0, "beliefs.alpha", "must lie in (0,1)");
}

void FrictionSpec::validate() const {
    detail::require(lambda_impl > 0.0 && lambda_impl <= 1.0, "frictions.lambda", "must lie in (0,1]");
    detail::require(eps_flip >= 0.0 && eps_flip < 0.5, "frictions.eps", "must lie in [0,0.5)");
    detail::require(eta_base >= 0.0 && eta_base < 1.0, "frictions.eta", "must lie in [0,1)");
}

double odds(double p) {
    detail::require(p > 0.0 && p < 1.0, "", "odds requires a probability in (0,1)");
    return p / (1.0 - p);
}

double odds_inv(double o) {
    detail::require(o > 0.0 && std::isfinite(o), "", "odds_inv requires positive finite odds");
    return o / (1.0 + o);
}

OutcomeLlrs outcome_llrs(const MlrpSignal& model, double c) {
    detail::require(!std::isnan(c), "cutoff", "must not be NaN");
    const double plus = log_ratio(model.log_survival(Ability::high, State::good, c),
                                  model.log_survival(Ability::low, State::good, c));
    const double minus = log_ratio(model.log_survival(Ability::high, State::bad, c),
                                   model.log_survival(Ability::low, State::bad, c));
    return {std::exp(plus), std::exp(minus)};
}

LikelihoodRatio history_llr(const MlrpSignal& model, const BeliefState& beliefs, double conjecture, History history) {
    beliefs.validate();
    detail::require(!std::isnan(conjecture), "cutoff", "must not be NaN");
    const Truncation th = truncation(model, Ability::high, conjecture);
    const Truncation tl = truncation(model, Ability::low, conjecture);
    const RatioLog r = history_ratio(th, tl, beliefs.alpha, 0.0, history);
    return {std::exp(r.log_value), r.off_path};
}

PosteriorSet posteriors(const MlrpSignal& model, const BeliefState& beliefs, double conjecture,
                        const FrictionSpec& frictions, MisclassificationRule rule) {
    beliefs.validate();
    frictions.validate();
    detail::require(!std::isnan(conjecture), "cutoff", "must not be NaN");
    const Truncation th = truncation(model, Ability::high, conjecture);
    const Truncation tl = truncation(model, Ability::low, conjecture);
    const double a = beliefs.alpha;
    const double eps = frictions.eps_flip;

    PosteriorSet out;
    RatioLog success;
    RatioLog failure;
    if (rule == MisclassificationRule::literal_ratio_mixture && eps > 0.0) {
        const RatioLog lp = history_ratio(th, tl, a, 0.0, History::success);
        const RatioLog lm = history_ratio(th, tl, a, 0.0, History::failure);
        const double plus = std::exp(lp.log_value);
        const double minus = std::exp(lm.log_value);
        success = {std::log((1.0 - eps) * plus + eps / minus), 0.0, lp.off_path || lm.off_path};
        failure = {std::log((1.0 - eps) * minus + eps / plus), 0.0, success.off_path};
    } else {
        success = history_ratio(th, tl, a, eps, History::success);
        failure = history_ratio(th, tl, a, eps, History::failure);
    }
    const RatioLog safe = history_ratio(th, tl, a, eps, History::safe);

    out.pi_success = update(beliefs.pi, success.log_value);
    out.pi_failure = update(beliefs.pi, failure.log_value);
    out.pi_safe = update(beliefs.pi, safe.log_value);
    out.off_path = success.off_path || failure.off_path || safe.off_path;
    if (frictions.lambda_impl < 1.0) {
        const RatioLog norec = history_ratio(th, tl, a, eps, History::unobserved);
        out.pi_norec_outcome = update(beliefs.pi, norec.log_value);
        out.off_path = out.off_path || norec.off_path;
    }
    return out;
}

PosteriorSlopes posterior_slopes(const MlrpSignal& model, const BeliefState& beliefs, double conjecture,
                                 const FrictionSpec& frictions) {
    beliefs.validate();
    frictions.validate();
    const Truncation th = truncation(model, Ability::high, conjecture);
    const Truncation tl = truncation(model, Ability::low, conjecture);
    const double a = beliefs.alpha;
    const double eps = frictions.eps_flip;
    auto slope = [&](History h) {
        const RatioLog r = history_ratio(th, tl, a, eps, h);
        const double post = update(beliefs.pi, r.log_value);
        return post * (1.0 - post) * r.dlog;
    };
    return {slope(History::success), slope(History::failure), slope(History::safe)};
}

const char* to_string(PublicHistory h) noexcept {
    switch (h) {
        case PublicHistory::safe_failure: return "0,0";
        case PublicHistory::safe_success: return "0,1";
        case PublicHistory::risky_success: return "1,1";
        case PublicHistory::risky_failure: return "1,0";
        case PublicHistory::risky_unobserved: return "1,none";
    }
    return "?";
}

double HistoryLaw::marginal(PublicHistory h, double pi) const {
    const auto i = static_cast<std::size_t>(h);
    return pi * high[i] + (1.0 - pi) * low[i];
}

double HistoryLaw::posterior(PublicHistory h, double pi) const {
    const double m = marginal(h, pi);
    if (m <= 0.0) return pi;
    return pi * high[static_cast<std::size_t>(h)] / m;
}

HistoryLaw history_law(const MlrpSignal& model, const BeliefState& beliefs, double c, const FrictionSpec& frictions) {
    beliefs.validate();
    frictions.validate();
    const double a = beliefs.alpha;
    const double eps = frictions.eps_flip;
    const double lam = frictions.lambda_impl;
    const double eta = frictions.eta_base;

    auto fill = [&](Ability type, std::array<double, kPublicHistoryCount>& out) {
        const double r_good = rec_frequency(model, type, State::good, c);
        const double r_bad = rec_frequency(model, type, State::bad, c);
        const double safe = a * std::exp(model.log_cdf(type, State::good, c)) +
                            (1.0 - a) * std::exp(model.log_cdf(type, State::bad, c));
        const double risky = a * r_good + (1.0 - a) * r_bad;
        out[static_cast<std::size_t>(PublicHistory::safe_failure)] = (1.0 - eta) * safe;
        out[static_cast<std::size_t>(PublicHistory::safe_success)] = eta * safe;
        out[static_cast<std::size_t>(PublicHistory::risky_success)] =
            lam * ((1.0 - eps) * a * r_good + eps * (1.0 - a) * r_bad);
        out[static_cast<std::size_t>(PublicHistory::risky_failure)] =
            lam * ((1.0 - eps) * (1.0 - a) * r_bad + eps * a * r_good);
        out[static_cast<std::size_t>(PublicHistory::risky_unobserved)] = (1.0 - lam) * risky;
    };
    HistoryLaw law;
    fill(Ability::high, law.high);
    fill(Ability::low, law.low);
    return law;
}

}  // namespace repcut
