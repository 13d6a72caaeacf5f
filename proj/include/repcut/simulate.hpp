#pragma once

#include "repcut/belief.hpp"
#include "repcut/equilibrium.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace repcut {

enum class Outcome : std::uint8_t { failure, success, none };

struct EpisodeRecord {
    Ability theta = Ability::high;
    State omega = State::bad;
    double s = 0.0;
    bool action = false;
    bool implemented = false;
    Outcome outcome = Outcome::none;           // realized outcome of the recommendation
    Outcome observed_outcome = Outcome::none;  // after misclassification
    bool baseline_success = false;             // y = 1 without action (baseline risk)

    PublicHistory history() const noexcept;
};

// Episode `index` of the stream keyed by `seed`. Each episode draws from its
// own SplitMix64 sequence, so results do not depend on evaluation order.
EpisodeRecord simulate_episode(const Model& model, double cutoff, std::uint64_t seed, std::uint64_t index);

struct SimSummary {
    std::uint64_t n_episodes = 0;
    std::array<std::uint64_t, kPublicHistoryCount> count_high{};
    std::array<std::uint64_t, kPublicHistoryCount> count_low{};
    std::uint64_t risky_high = 0;
    std::uint64_t risky_low = 0;

    std::uint64_t n_high() const noexcept;
    std::uint64_t n_low() const noexcept;
    std::uint64_t count(PublicHistory h) const noexcept;
    double freq(PublicHistory h) const;
    double freq_given_high(PublicHistory h) const;
    // Share of H among episodes with history h; NaN if none occurred.
    double posterior(PublicHistory h) const;
    double rate_high() const;
    double rate_low() const;
    double rate_unconditional() const;

    friend bool operator==(const SimSummary&, const SimSummary&) = default;
};

// threads = 0 uses the hardware concurrency. Output is identical for any
// thread count.
SimSummary simulate(const Model& model, double cutoff, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

// Binomial standard error of a proportion p estimated from m trials.
double binomial_se(double p, std::uint64_t m);

struct SimCheck {
    std::string statistic;
    double empirical = 0.0;
    double analytic = 0.0;
    double std_error = 0.0;  // evaluated at the analytic proportion
    double z = 0.0;
};

// Side-by-side comparison with the closed-form history law at `cutoff`.
std::vector<SimCheck> compare_to_analytic(const Model& model, double cutoff, const SimSummary& summary);

}  // namespace repcut
