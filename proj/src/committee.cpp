#include "repcut/committee.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace repcut {

void CommitteeSpec::validate() const {
    detail::require(n >= 1, "committee.n", "must be >= 1");
    detail::require(k >= 1 && k <= n, "committee.k", "must lie in [1, n]");
    detail::require(member_yes_probs.size() == static_cast<std::size_t>(n), "committee.member_yes_probs",
                    "needs one entry per member");
    for (const auto& q : member_yes_probs)
        for (const double v : q)
            detail::require(v >= 0.0 && v <= 1.0, "committee.member_yes_probs", "entries must lie in [0,1]");
}

double pivotality(const CommitteeSpec& spec, std::size_t member, State omega) {
    spec.validate();
    detail::require(member < static_cast<std::size_t>(spec.n), "committee.member", "index out of range");
    const auto w = static_cast<std::size_t>(omega);
    // dist[j] = Pr(j yes votes among the others processed so far)
    std::vector<double> dist(1, 1.0);
    for (std::size_t j = 0; j < spec.member_yes_probs.size(); ++j) {
        if (j == member) continue;
        const double q = spec.member_yes_probs[j][w];
        std::vector<double> next(dist.size() + 1, 0.0);
        for (std::size_t m = 0; m < dist.size(); ++m) {
            next[m] += dist[m] * (1.0 - q);
            next[m + 1] += dist[m] * q;
        }
        dist = std::move(next);
    }
    return dist[static_cast<std::size_t>(spec.k - 1)];
}

CommitteeCutoff committee_cutoff(const Model& model, const CommitteeSpec& spec, std::size_t member) {
    CommitteeCutoff out;
    out.zeta_success = pivotality(spec, member, State::good);
    out.zeta_failure = pivotality(spec, member, State::bad);
    AdvantageOptions opt;
    opt.success_weight = out.zeta_success;
    opt.failure_weight = out.zeta_failure;
    out.solution = solve_equilibrium(model, opt);
    return out;
}

GatekeepingSchedule::GatekeepingSchedule(std::vector<double> thresholds, std::vector<double> lambdas)
    : t_(std::move(thresholds)), lambda_(std::move(lambdas)) {
    detail::require(!t_.empty() && t_.size() == lambda_.size(), "gatekeeping", "needs matching, nonempty knots");
    for (std::size_t i = 0; i < t_.size(); ++i) {
        detail::require(lambda_[i] > 0.0 && lambda_[i] <= 1.0, "gatekeeping.lambda", "must lie in (0,1]");
        if (i == 0) continue;
        detail::require(t_[i] > t_[i - 1], "gatekeeping.threshold", "must be strictly increasing");
        detail::require(lambda_[i] <= lambda_[i - 1], "gatekeeping.lambda", "must be nonincreasing in T");
    }
}

double GatekeepingSchedule::lambda_at(double threshold) const {
    if (threshold <= t_.front()) return lambda_.front();
    if (threshold >= t_.back()) return lambda_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), threshold);
    const std::size_t i = static_cast<std::size_t>(it - t_.begin());
    const double w = (threshold - t_[i - 1]) / (t_[i] - t_[i - 1]);
    return lambda_[i - 1] + w * (lambda_[i] - lambda_[i - 1]);
}

std::vector<GatekeepingRow> gatekeeping_sweep(const Model& model, const GatekeepingSchedule& schedule,
                                              const std::vector<double>& thresholds) {
    std::vector<GatekeepingRow> rows;
    rows.reserve(thresholds.size());
    for (const double t : thresholds) {
        Model m = model;
        m.frictions.lambda_impl = schedule.lambda_at(t);
        rows.push_back({t, m.frictions.lambda_impl, solve_equilibrium(m)});
    }
    return rows;
}

OverconfidenceWedge overconfidence_wedge(const Model& model, double perceived_sigma_h) {
    detail::require(perceived_sigma_h > 0.0, "perceived_sigma_h", "must be positive");
    detail::require(perceived_sigma_h <= model.signal.sigma_h(), "perceived_sigma_h", "must not exceed sigma_h");
    OverconfidenceWedge w;
    const EquilibriumSolution actual = solve_equilibrium(model).require_interior();
    w.actual_cutoff = actual.cutoff;
    AdvantageOptions opt;
    opt.perceived_signal = model.signal.with_sigma_h(perceived_sigma_h);
    const EquilibriumSolution perceived = solve_equilibrium(model, opt);
    w.perceived_cutoff = perceived.cutoff;
    const double rho_actual = experimentation_rate(model.signal, model.beliefs, w.actual_cutoff);
    double rho_perceived = 0.0;
    if (perceived.corner == CornerKind::all_risky)
        rho_perceived = 1.0;
    else if (perceived.interior())
        rho_perceived = experimentation_rate(model.signal, model.beliefs, w.perceived_cutoff);
    else if (perceived.corner == CornerKind::indeterminate)
        throw NoInteriorEquilibrium(perceived.corner);
    w.rate_wedge = rho_perceived - rho_actual;
    return w;
}

}  // namespace repcut
