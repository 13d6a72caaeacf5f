#include "repcut/contract.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace repcut {

namespace {

constexpr double kTargetTolerance = 1e-10;

Model without_transfers(const Model& model) {
    Model m = model;
    m.transfers = TransferSpec{0.0, 0.0, false};
    return m;
}

double nearest_root(const EquilibriumSolution& sol, double target) {
    if (sol.all_roots.empty()) return sol.cutoff;
    return *std::min_element(sol.all_roots.begin(), sol.all_roots.end(), [target](double a, double b) {
        return std::abs(a - target) < std::abs(b - target);
    });
}

}  // namespace

double cutoff_for_target(const MlrpSignal& signal, const BeliefState& beliefs, double rho_star) {
    beliefs.validate();
    detail::require(rho_star > 0.0 && rho_star < 1.0, "rho_star", "target must lie in (0,1)");
    auto excess = [&](double c) { return experimentation_rate(signal, beliefs, c) - rho_star; };

    double lo = -1.0;
    double hi = 1.0;
    while (excess(lo) < 0.0) lo *= 2.0;
    while (excess(hi) > 0.0) hi *= 2.0;
    for (int iter = 0; iter < kMaxIterations && hi - lo > 0.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    const double c = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
    if (std::abs(excess(c)) > kTargetTolerance) throw NonConvergence("cutoff_for_target: residual above 1e-10");
    return c;
}

double beta1_backout(const Model& model, double c) {
    const Model m = without_transfers(model);
    const Model with_penalty = [&] {
        Model x = m;
        x.transfers.beta0 = model.transfers.beta0;
        return x;
    }();
    with_penalty.validate();
    const AdvantageEval e = evaluate_advantage(with_penalty, c, c);
    if (e.success_prob < kOffPathFloor)
        throw DegenerateSuccessProb("success probability at the cutoff is below 1e-12");
    return -e.value / (model.frictions.lambda_impl * e.success_prob);
}

CalibrationRow calibrate(const Model& model, double rho_star) {
    CalibrationRow row;
    row.rho_star = rho_star;
    row.cutoff = cutoff_for_target(model.signal, model.beliefs, rho_star);
    row.p_h_at_cutoff = success_prob_at(model.signal, model.beliefs.alpha, row.cutoff);
    row.beta1 = beta1_backout(model, row.cutoff);
    row.ll_violation = row.beta1 < 0.0;

    Model check = model;
    check.transfers.beta1 = row.beta1;
    check.transfers.limited_liability = false;
    const EquilibriumSolution sol = solve_equilibrium(check);
    if (!sol.interior() || std::abs(nearest_root(sol, row.cutoff) - row.cutoff) > 1e-6)
        throw ComputationError("calibrate: backed-out bonus does not reproduce the target cutoff");
    return row;
}

double ImplementersLine::beta1_for(double beta0) const {
    return (-delta_hat / lambda + failure_coef * beta0) / success_coef;
}

ImplementersLine implementers_line(const Model& model, double rho_star) {
    ImplementersLine line;
    line.cutoff = cutoff_for_target(model.signal, model.beliefs, rho_star);
    const Model bare = without_transfers(model);
    bare.validate();
    const AdvantageEval e = evaluate_advantage(bare, line.cutoff, line.cutoff);
    if (e.success_prob < kOffPathFloor)
        throw DegenerateSuccessProb("success probability at the target cutoff is below 1e-12");
    line.delta_hat = e.value;
    line.success_coef = e.success_prob;
    line.failure_coef = 1.0 - e.success_prob;
    line.lambda = model.frictions.lambda_impl;

    for (const double beta0 : {0.0, 0.05, 0.1}) {
        Model m = bare;
        m.transfers.beta0 = beta0;
        m.transfers.beta1 = line.beta1_for(beta0);
        const EquilibriumSolution sol = solve_equilibrium(m);
        const double err = sol.interior() ? std::abs(nearest_root(sol, line.cutoff) - line.cutoff)
                                          : std::numeric_limits<double>::infinity();
        line.spot_check_error = std::max(line.spot_check_error, err);
    }
    return line;
}

double drho_dbeta1(const Model& model, SensitivityMode mode) {
    const EquilibriumSolution sol = solve_equilibrium(model);
    if (!sol.interior()) throw SensitivityAtCorner("drho_dbeta1 at a corner equilibrium");
    const double c = sol.cutoff;
    const AdvantageEval e = evaluate_advantage(model, c, c);
    const double denom = mode == SensitivityMode::equilibrium ? e.ds + e.dconjecture : e.ds;
    const double ds_dbeta1 = -(model.frictions.lambda_impl * e.success_prob) / denom;
    const double a = model.beliefs.alpha;
    const double density = (1.0 - a) * std::exp(model.signal.log_density(Ability::high, State::bad, c)) +
                           a * std::exp(model.signal.log_density(Ability::high, State::good, c));
    return density * (-ds_dbeta1);
}

}  // namespace repcut
