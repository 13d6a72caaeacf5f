#pragma once

#include "repcut/signal_model.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace repcut {

// Public prior over the expert's type and the state prior.
struct BeliefState {
    double pi = 0.5;     // Pr(theta = H)
    double alpha = 0.5;  // Pr(omega = 1)

    void validate() const;
    friend bool operator==(const BeliefState&, const BeliefState&) = default;
};

// Measurement and implementation frictions. The defaults are the frictionless
// baseline and reproduce it exactly.
struct FrictionSpec {
    double lambda_impl = 1.0;  // Pr(risky recommendation is implemented)
    double eps_flip = 0.0;     // Pr(observed outcome is flipped)
    double eta_base = 0.0;     // Pr(y = 1 | a = 0), baseline risk

    void validate() const;
    bool frictionless() const noexcept { return lambda_impl == 1.0 && eps_flip == 0.0 && eta_base == 0.0; }
    friend bool operator==(const FrictionSpec&, const FrictionSpec&) = default;
};

double odds(double p);
double odds_inv(double o);

struct OutcomeLlrs {
    double plus;   // r_H(1|1) / r_L(1|1)
    double minus;  // r_H(1|0) / r_L(1|0)
};

// Truncation-probability ratios at cutoff c, evaluated in log space. Never
// returns 0 or infinity.
OutcomeLlrs outcome_llrs(const MlrpSignal& model, double c);

// Public histories of the frictionless game plus the recommendation-only event.
enum class History : std::uint8_t {
    safe,        // (0,0)
    success,     // (1,1)
    failure,     // (1,0)
    unobserved,  // (1, none)
};

struct LikelihoodRatio {
    double value = 1.0;
    bool off_path = false;  // an event probability was clamped at kOffPathFloor
};

inline constexpr double kOffPathFloor = 1e-12;

// Pr(h | H) / Pr(h | L) when the market conjectures the cutoff `conjecture`.
LikelihoodRatio history_llr(const MlrpSignal& model, const BeliefState& beliefs, double conjecture, History history);

struct PosteriorSet {
    double pi_success = 0.5;                  // after (1,1)
    double pi_failure = 0.5;                  // after (1,0)
    double pi_safe = 0.5;                     // after (0,0)
    std::optional<double> pi_norec_outcome;   // after (1, none); present iff lambda < 1
    bool off_path = false;
};

enum class MisclassificationRule {
    likelihood_mixture,     // mix Pr(y_obs | a=1, theta) in numerator and denominator
    literal_ratio_mixture,  // (1-eps) L+ + eps / L-, kept for comparison only
};

PosteriorSet posteriors(const MlrpSignal& model, const BeliefState& beliefs, double conjecture,
                        const FrictionSpec& frictions = {},
                        MisclassificationRule rule = MisclassificationRule::likelihood_mixture);

// d/d(conjecture) of each posterior under the likelihood mixture; clamped
// events contribute zero slope.
struct PosteriorSlopes {
    double success = 0.0;
    double failure = 0.0;
    double safe = 0.0;
};

PosteriorSlopes posterior_slopes(const MlrpSignal& model, const BeliefState& beliefs, double conjecture,
                                 const FrictionSpec& frictions = {});

// The full public partition once baseline risk and unobserved implementation
// are in play.
enum class PublicHistory : std::uint8_t {
    safe_failure,      // (0,0)
    safe_success,      // (0,1), only with baseline risk
    risky_success,     // (1,1) as observed
    risky_failure,     // (1,0) as observed
    risky_unobserved,  // (1, none)
};

inline constexpr std::size_t kPublicHistoryCount = 5;

const char* to_string(PublicHistory h) noexcept;

struct HistoryLaw {
    std::array<double, kPublicHistoryCount> high{};  // Pr(h | H)
    std::array<double, kPublicHistoryCount> low{};   // Pr(h | L)

    double marginal(PublicHistory h, double pi) const;
    // Pr(H | h); returns pi for null events.
    double posterior(PublicHistory h, double pi) const;
};

// Exact (unclamped) history probabilities at cutoff c.
HistoryLaw history_law(const MlrpSignal& model, const BeliefState& beliefs, double c, const FrictionSpec& frictions = {});

}  // namespace repcut
