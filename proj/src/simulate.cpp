#include "repcut/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace repcut {

namespace {

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() noexcept {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // (0, 1]
    double uniform() noexcept { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
};

SplitMix64 episode_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 keyed{seed};
    const std::uint64_t key = keyed.next();
    SplitMix64 mixer{key ^ (index * 0xd1b54a32d192ed03ULL)};
    return SplitMix64{mixer.next()};
}

std::size_t idx(PublicHistory h) { return static_cast<std::size_t>(h); }

const char* stat_name(PublicHistory h) {
    static constexpr const char* names[kPublicHistoryCount] = {"h00", "h01", "h11", "h10", "h1none"};
    return names[idx(h)];
}

double ratio(std::uint64_t a, std::uint64_t b) {
    return b == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(a) / static_cast<double>(b);
}

}  // namespace

PublicHistory EpisodeRecord::history() const noexcept {
    if (!action) return baseline_success ? PublicHistory::safe_success : PublicHistory::safe_failure;
    switch (observed_outcome) {
        case Outcome::success: return PublicHistory::risky_success;
        case Outcome::failure: return PublicHistory::risky_failure;
        case Outcome::none: break;
    }
    return PublicHistory::risky_unobserved;
}

EpisodeRecord simulate_episode(const Model& model, double cutoff, std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng = episode_stream(seed, index);
    const FrictionSpec& fr = model.frictions;
    EpisodeRecord e;
    e.theta = rng.uniform() <= model.beliefs.pi ? Ability::high : Ability::low;
    e.omega = rng.uniform() <= model.beliefs.alpha ? State::good : State::bad;
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    e.s = model.signal.mean(e.omega) + model.signal.sigma(e.theta) * z;
    e.action = e.s >= cutoff;
    const double u_impl = rng.uniform();
    const double u_flip = rng.uniform();
    const double u_base = rng.uniform();
    if (e.action) {
        e.implemented = u_impl <= fr.lambda_impl;
        if (e.implemented) {
            e.outcome = e.omega == State::good ? Outcome::success : Outcome::failure;
            const bool flip = u_flip <= fr.eps_flip;
            e.observed_outcome = flip ? (e.outcome == Outcome::success ? Outcome::failure : Outcome::success)
                                      : e.outcome;
        }
    } else {
        e.baseline_success = u_base <= fr.eta_base;
    }
    return e;
}

std::uint64_t SimSummary::n_high() const noexcept {
    std::uint64_t n = 0;
    for (const auto c : count_high) n += c;
    return n;
}

std::uint64_t SimSummary::n_low() const noexcept { return n_episodes - n_high(); }

std::uint64_t SimSummary::count(PublicHistory h) const noexcept { return count_high[idx(h)] + count_low[idx(h)]; }

double SimSummary::freq(PublicHistory h) const { return ratio(count(h), n_episodes); }

double SimSummary::freq_given_high(PublicHistory h) const { return ratio(count_high[idx(h)], n_high()); }

double SimSummary::posterior(PublicHistory h) const { return ratio(count_high[idx(h)], count(h)); }

double SimSummary::rate_high() const { return ratio(risky_high, n_high()); }

double SimSummary::rate_low() const { return ratio(risky_low, n_low()); }

double SimSummary::rate_unconditional() const { return ratio(risky_high + risky_low, n_episodes); }

SimSummary simulate(const Model& model, double cutoff, std::uint64_t n, std::uint64_t seed, unsigned threads) {
    model.validate();
    detail::require(n >= 1, "episodes", "must be >= 1");
    detail::require(!std::isnan(cutoff), "cutoff", "must not be NaN");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));

    std::vector<SimSummary> parts(threads);
    auto work = [&](unsigned t) {
        const std::uint64_t begin = n * t / threads;
        const std::uint64_t end = n * (t + 1) / threads;
        SimSummary& out = parts[t];
        for (std::uint64_t i = begin; i < end; ++i) {
            const EpisodeRecord e = simulate_episode(model, cutoff, seed, i);
            const bool high = e.theta == Ability::high;
            (high ? out.count_high : out.count_low)[idx(e.history())] += 1;
            if (e.action) (high ? out.risky_high : out.risky_low) += 1;
        }
        out.n_episodes = end - begin;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    SimSummary total;
    for (const SimSummary& p : parts) {
        total.n_episodes += p.n_episodes;
        for (std::size_t h = 0; h < kPublicHistoryCount; ++h) {
            total.count_high[h] += p.count_high[h];
            total.count_low[h] += p.count_low[h];
        }
        total.risky_high += p.risky_high;
        total.risky_low += p.risky_low;
    }
    return total;
}

double binomial_se(double p, std::uint64_t m) {
    if (m == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(m));
}

std::vector<SimCheck> compare_to_analytic(const Model& model, double cutoff, const SimSummary& sim) {
    const HistoryLaw law = history_law(model.signal, model.beliefs, cutoff, model.frictions);
    const double pi = model.beliefs.pi;
    std::vector<SimCheck> rows;
    auto add = [&](std::string name, double emp, double target, std::uint64_t m) {
        SimCheck c{std::move(name), emp, target, binomial_se(target, m), 0.0};
        const double diff = emp - target;
        if (std::isnan(diff) || std::isnan(c.std_error))
            c.z = std::numeric_limits<double>::quiet_NaN();
        else if (c.std_error > 0.0)
            c.z = diff / c.std_error;
        else
            c.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
        rows.push_back(std::move(c));
    };
    for (std::size_t i = 0; i < kPublicHistoryCount; ++i) {
        const auto h = static_cast<PublicHistory>(i);
        const std::string name = stat_name(h);
        add("freq_" + name, sim.freq(h), law.marginal(h, pi), sim.n_episodes);
        add("freq_given_high_" + name, sim.freq_given_high(h), law.high[i], sim.n_high());
        if (sim.count(h) > 0) add("posterior_" + name, sim.posterior(h), law.posterior(h, pi), sim.count(h));
    }
    add("rate_high", sim.rate_high(), experimentation_rate(model.signal, model.beliefs, cutoff), sim.n_high());
    add("rate_unconditional", sim.rate_unconditional(),
        experimentation_rate(model.signal, model.beliefs, cutoff, RateConvention::unconditional), sim.n_episodes);

    double mart = 0.0;
    for (std::size_t i = 0; i < kPublicHistoryCount; ++i) {
        const auto h = static_cast<PublicHistory>(i);
        if (sim.count(h) > 0) mart += sim.freq(h) * sim.posterior(h);
    }
    add("martingale", mart, pi, sim.n_episodes);
    return rows;
}

}  // namespace repcut
