#pragma once

#include <cstdint>

namespace repcut {

// Expert ability type theta.
enum class Ability : std::uint8_t { high, low };

// Payoff state omega; `good` is omega = 1 (the risky action succeeds).
enum class State : std::uint8_t { bad = 0, good = 1 };

// A binary-state signal family with the monotone likelihood ratio property.
// Everything downstream (beliefs, solver, contracts) only needs these
// log-space primitives, so non-Gaussian families can plug in here.
class MlrpSignal {
public:
    virtual ~MlrpSignal() = default;

    virtual double log_density(Ability type, State state, double s) const = 0;

    // log Pr(s >= c | type, state)
    virtual double log_survival(Ability type, State state, double c) const = 0;

    // log Pr(s < c | type, state)
    virtual double log_cdf(Ability type, State state, double c) const = 0;

    // log f(s | good) - log f(s | bad); strictly increasing in s under MLRP.
    virtual double log_likelihood_ratio(Ability type, double s) const = 0;

    // d/ds of log_likelihood_ratio.
    virtual double log_likelihood_ratio_slope(Ability type, double s) const = 0;
};

// Gaussian benchmark: s | (omega, theta) ~ N(mu_omega, sigma_theta^2).
class SignalModel final : public MlrpSignal {
public:
    // Requires mu1 > mu0 and 0 < sigma_h <= sigma_l.
    SignalModel(double mu0, double mu1, double sigma_h, double sigma_l);

    // Equal state means: the signal carries no information about omega.
    // Only used for limit cases; it violates MLRP.
    static SignalModel uninformative(double mu, double sigma_h, double sigma_l);

    double mu0() const noexcept { return mu0_; }
    double mu1() const noexcept { return mu1_; }
    double sigma_h() const noexcept { return sigma_h_; }
    double sigma_l() const noexcept { return sigma_l_; }
    double mean(State state) const noexcept { return state == State::good ? mu1_ : mu0_; }
    double sigma(Ability type) const noexcept { return type == Ability::high ? sigma_h_ : sigma_l_; }

    SignalModel with_sigma_h(double sigma_h) const { return rebuild(mu0_, mu1_, sigma_h, sigma_l_); }
    SignalModel with_sigma_l(double sigma_l) const { return rebuild(mu0_, mu1_, sigma_h_, sigma_l); }
    SignalModel with_means(double mu0, double mu1) const { return rebuild(mu0, mu1, sigma_h_, sigma_l_); }

    double log_density(Ability type, State state, double s) const override;
    double log_survival(Ability type, State state, double c) const override;
    double log_cdf(Ability type, State state, double c) const override;
    double log_likelihood_ratio(Ability type, double s) const override;
    double log_likelihood_ratio_slope(Ability type, double s) const override;

    friend bool operator==(const SignalModel& a, const SignalModel& b) noexcept {
        return a.mu0_ == b.mu0_ && a.mu1_ == b.mu1_ && a.sigma_h_ == b.sigma_h_ && a.sigma_l_ == b.sigma_l_;
    }

private:
    struct Unchecked {};
    SignalModel(Unchecked, double mu0, double mu1, double sigma_h, double sigma_l) noexcept
        : mu0_(mu0), mu1_(mu1), sigma_h_(sigma_h), sigma_l_(sigma_l) {}
    SignalModel rebuild(double mu0, double mu1, double sigma_h, double sigma_l) const;

    double mu0_;
    double mu1_;
    double sigma_h_;
    double sigma_l_;
};

// r_theta(1 | omega; c) = Pr(s >= c | theta, omega).
double rec_frequency(const MlrpSignal& model, Ability type, State state, double c);

// Pr(omega = 1 | theta, s = c), formed from the density ratio at c.
// Requires 0 < alpha < 1.
double success_prob_at(const MlrpSignal& model, double alpha, double c, Ability type = Ability::high);

// d/dc of success_prob_at.
double success_prob_slope(const MlrpSignal& model, double alpha, double c, Ability type = Ability::high);

}  // namespace repcut
