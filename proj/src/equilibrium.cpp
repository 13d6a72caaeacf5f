#include "repcut/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace repcut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Root {
    double x;
    double residual;
    double slope;
};

// Safeguarded Newton inside a sign-change bracket. `eval` returns
// (value, derivative). Returns nullopt when the bracket collapses onto a jump.
template <class Eval>
std::optional<Root> polish(Eval&& eval, double a, double b, double ga, double gb) {
    double x = a - ga * (b - a) / (gb - ga);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    double last_step = b - a;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const auto [g, dg] = eval(x);
        if (g == 0.0) return Root{x, g, dg};
        if ((g > 0.0) == (ga > 0.0)) {
            a = x;
            ga = g;
        } else {
            b = x;
            gb = g;
        }
        const double scale = std::max(1.0, std::abs(x));
        const double newton = x - g / dg;
        double next;
        if (std::isfinite(newton) && newton > a && newton < b && std::abs(newton - x) < 0.5 * last_step) {
            next = newton;
        } else {
            next = 0.5 * (a + b);
        }
        const double step = std::abs(next - x);
        const bool collapsed = (b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
        if (step <= 2.0 * std::numeric_limits<double>::epsilon() * scale || collapsed) {
            const auto [g_next, dg_next] = eval(next);
            const Root best = std::abs(g_next) <= std::abs(g) ? Root{next, g_next, dg_next} : Root{x, g, dg};
            if (std::abs(best.residual) <= kResidualTolerance) return best;
            if (collapsed) return std::nullopt;
        }
        last_step = std::max(step, 4.0 * std::numeric_limits<double>::epsilon() * scale);
        x = next;
    }
    const auto [g, dg] = eval(x);
    if (std::abs(g) <= kResidualTolerance) return Root{x, g, dg};
    throw NonConvergence("root polishing did not converge within 200 iterations");
}

struct ScanResult {
    std::vector<Root> roots;
    int discarded = 0;
    bool all_zero = true;
    bool any_positive = false;
    bool any_negative = false;
    double first_value = 0.0;
    double last_value = 0.0;
};

template <class Eval>
ScanResult scan(Eval&& eval, double lo, double hi) {
    ScanResult out;
    std::vector<double> xs(kScanPoints);
    std::vector<double> gs(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / (kScanPoints - 1);
        gs[i] = eval(xs[i]).first;
        out.all_zero = out.all_zero && gs[i] == 0.0;
        out.any_positive = out.any_positive || gs[i] > 0.0;
        out.any_negative = out.any_negative || gs[i] < 0.0;
    }
    out.first_value = gs.front();
    out.last_value = gs.back();
    if (out.all_zero) return out;
    for (int i = 0; i < kScanPoints; ++i) {
        if (gs[i] == 0.0) {
            out.roots.push_back({xs[i], 0.0, eval(xs[i]).second});
            continue;
        }
        if (i + 1 < kScanPoints && gs[i + 1] != 0.0 && (gs[i] > 0.0) != (gs[i + 1] > 0.0)) {
            if (auto r = polish(eval, xs[i], xs[i + 1], gs[i], gs[i + 1])) {
                out.roots.push_back(*r);
            } else {
                ++out.discarded;
            }
        }
    }
    return out;
}

EquilibriumSolution assemble(const Model& model, const ScanResult& scan, double conjecture_override,
                             const AdvantageOptions& options) {
    EquilibriumSolution sol;
    sol.discarded_brackets = scan.discarded;
    for (const Root& r : scan.roots) sol.all_roots.push_back(r.x);
    const MlrpSignal& signal = model.signal;

    if (!scan.roots.empty()) {
        // Roots that exist only because an event probability hit the clamp
        // floor are kept as a fallback.
        const Root* pick = &scan.roots.front();
        if (std::isnan(conjecture_override)) {
            for (const Root& r : scan.roots) {
                if (!posteriors(signal, model.beliefs, r.x, model.frictions).off_path) {
                    pick = &r;
                    break;
                }
            }
        }
        const Root& r = *pick;
        sol.cutoff = r.x;
        sol.residual = r.residual;
        sol.equilibrium_slope = r.slope;
        sol.corner = CornerKind::interior;
    } else if (scan.all_zero) {
        sol.cutoff = std::numeric_limits<double>::quiet_NaN();
        sol.corner = CornerKind::indeterminate;
    } else if (!scan.any_negative || (scan.any_negative && scan.any_positive && scan.last_value > 0.0)) {
        sol.cutoff = -kInf;
        sol.corner = CornerKind::all_risky;
        sol.residual = scan.first_value;
    } else {
        sol.cutoff = kInf;
        sol.corner = CornerKind::all_safe;
        sol.residual = scan.last_value;
    }

    if (sol.corner == CornerKind::indeterminate) {
        sol.posteriors = posteriors(signal, model.beliefs, 0.5 * (model.signal.mu0() + model.signal.mu1()),
                                    model.frictions);
        sol.success_prob_at_cutoff = std::numeric_limits<double>::quiet_NaN();
        sol.experimentation_rate = std::numeric_limits<double>::quiet_NaN();
        return sol;
    }
    const double conj = std::isnan(conjecture_override) ? sol.cutoff : conjecture_override;
    sol.posteriors = posteriors(signal, model.beliefs, conj, model.frictions);
    sol.off_path = sol.posteriors.off_path;
    const MlrpSignal& perceived =
        options.perceived_signal ? static_cast<const MlrpSignal&>(*options.perceived_signal) : signal;
    sol.success_prob_at_cutoff = success_prob_at(perceived, model.beliefs.alpha, sol.cutoff);
    sol.experimentation_rate = experimentation_rate(signal, model.beliefs, sol.cutoff);
    return sol;
}

double scan_lo(const SignalModel& s) { return s.mu0() - kScanWidthSigmas * s.sigma_l(); }
double scan_hi(const SignalModel& s) { return s.mu1() + kScanWidthSigmas * s.sigma_l(); }

}  // namespace

void Model::validate() const {
    beliefs.validate();
    payoff.validate();
    transfers.validate();
    frictions.validate();
}

AdvantageEval evaluate_advantage(const Model& model, double s, double conjecture, const AdvantageOptions& options) {
    const BeliefState& b = model.beliefs;
    const FrictionSpec& fr = model.frictions;
    const MlrpSignal& perceived = options.perceived_signal
                                      ? static_cast<const MlrpSignal&>(*options.perceived_signal)
                                      : static_cast<const MlrpSignal&>(model.signal);

    AdvantageEval e;
    e.posteriors = posteriors(model.signal, b, conjecture, fr);
    const PosteriorSlopes slopes = posterior_slopes(model.signal, b, conjecture, fr);

    const double eps = fr.eps_flip;
    const double p = success_prob_at(perceived, b.alpha, s);
    const double dp = success_prob_slope(perceived, b.alpha, s);
    const double p_obs = eps == 0.0 ? p : p * (1.0 - eps) + (1.0 - p) * eps;
    const double dp_obs = (1.0 - 2.0 * eps) * dp;

    const PayoffSpec& pay = model.payoff;
    const PosteriorSet& post = e.posteriors;
    const double v_safe = eval_V(pay, post.pi_safe);
    e.success_gain = eval_V(pay, post.pi_success) - v_safe + model.transfers.beta1;
    e.failure_gain = eval_V(pay, post.pi_failure) - v_safe - model.transfers.beta0;
    e.success_prob = p_obs;

    const double w1 = fr.lambda_impl * options.success_weight;
    const double w0 = fr.lambda_impl * options.failure_weight;
    e.value = pay.phi + w1 * p_obs * e.success_gain + w0 * (1.0 - p_obs) * e.failure_gain;
    e.ds = dp_obs * (w1 * e.success_gain - w0 * e.failure_gain);

    const double dv_safe = eval_V_slope(pay, post.pi_safe) * slopes.safe;
    const double dv_success = eval_V_slope(pay, post.pi_success) * slopes.success;
    const double dv_failure = eval_V_slope(pay, post.pi_failure) * slopes.failure;
    e.dconjecture = w1 * p_obs * (dv_success - dv_safe) + w0 * (1.0 - p_obs) * (dv_failure - dv_safe);
    return e;
}

double advantage(const Model& model, double s, double conjecture, const AdvantageOptions& options) {
    return evaluate_advantage(model, s, conjecture, options).value;
}

const EquilibriumSolution& EquilibriumSolution::require_interior() const {
    if (!interior()) throw NoInteriorEquilibrium(corner);
    return *this;
}

EquilibriumSolution solve_equilibrium(const Model& model, const AdvantageOptions& options) {
    model.validate();
    auto eval = [&](double c) {
        const AdvantageEval e = evaluate_advantage(model, c, c, options);
        return std::pair{e.value, e.ds + e.dconjecture};
    };
    const ScanResult result = scan(eval, scan_lo(model.signal), scan_hi(model.signal));
    return assemble(model, result, std::numeric_limits<double>::quiet_NaN(), options);
}

EquilibriumSolution best_response(const Model& model, double conjecture, const AdvantageOptions& options) {
    model.validate();
    auto eval = [&](double s) {
        const AdvantageEval e = evaluate_advantage(model, s, conjecture, options);
        return std::pair{e.value, e.ds};
    };
    const ScanResult result = scan(eval, scan_lo(model.signal), scan_hi(model.signal));
    EquilibriumSolution sol = assemble(model, result, conjecture, options);
    if (sol.interior()) sol.equilibrium_slope = evaluate_advantage(model, sol.cutoff, conjecture, options).ds;
    return sol;
}

double experimentation_rate(const MlrpSignal& signal, const BeliefState& beliefs, double c,
                            RateConvention convention) {
    beliefs.validate();
    auto type_rate = [&](Ability type) {
        return (1.0 - beliefs.alpha) * rec_frequency(signal, type, State::bad, c) +
               beliefs.alpha * rec_frequency(signal, type, State::good, c);
    };
    const double high = type_rate(Ability::high);
    if (convention == RateConvention::high_type) return high;
    return beliefs.pi * high + (1.0 - beliefs.pi) * type_rate(Ability::low);
}

double rd_derivative(const Model& model, double c, const AdvantageOptions& options) {
    const double pi = model.beliefs.pi;
    const double h = std::min({1e-5, 0.5 * pi, 0.5 * (1.0 - pi)});
    Model up = model;
    Model down = model;
    up.beliefs.pi = pi + h;
    down.beliefs.pi = pi - h;
    return (advantage(up, c, c, options) - advantage(down, c, c, options)) / (2.0 * h);
}

ConservatismReport conservatism_sweep(const Model& model, std::span<const double> pi_grid) {
    for (std::size_t i = 0; i < pi_grid.size(); ++i) {
        detail::require(pi_grid[i] > 0.0 && pi_grid[i] < 1.0, "pi_grid", "entries must lie in (0,1)");
        detail::require(i == 0 || pi_grid[i] > pi_grid[i - 1], "pi_grid", "must be strictly increasing");
    }
    ConservatismReport report;
    report.rows.reserve(pi_grid.size());
    for (const double pi : pi_grid) {
        Model m = model;
        m.beliefs.pi = pi;
        SweepRow row;
        row.pi = pi;
        row.solution = solve_equilibrium(m);
        row.rate = row.solution.experimentation_rate;
        row.rd = row.solution.interior() ? rd_derivative(m, row.solution.cutoff)
                                         : std::numeric_limits<double>::quiet_NaN();
        report.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
        const SweepRow& a = report.rows[i];
        const SweepRow& b = report.rows[i + 1];
        if (!a.solution.interior() || !b.solution.interior()) continue;
        if (a.rd <= 0.0 && b.rd <= 0.0 && b.solution.cutoff < a.solution.cutoff) report.violations.push_back(i);
    }
    return report;
}

const char* to_string(SensitivityParam p) noexcept {
    switch (p) {
        case SensitivityParam::beta1: return "beta1";
        case SensitivityParam::beta0: return "beta0";
        case SensitivityParam::lambda: return "lambda";
        case SensitivityParam::alpha: return "alpha";
        case SensitivityParam::sigma_h: return "sigma_h";
        case SensitivityParam::sigma_l: return "sigma_l";
        case SensitivityParam::mu_gap: return "mu_gap";
        case SensitivityParam::kappa: return "kappa";
    }
    return "?";
}

std::optional<SensitivityParam> parse_sensitivity_param(std::string_view name) {
    for (auto p : {SensitivityParam::beta1, SensitivityParam::beta0, SensitivityParam::lambda, SensitivityParam::alpha,
                   SensitivityParam::sigma_h, SensitivityParam::sigma_l, SensitivityParam::mu_gap,
                   SensitivityParam::kappa}) {
        if (name == to_string(p)) return p;
    }
    return std::nullopt;
}

double parameter_value(const Model& model, SensitivityParam which) {
    switch (which) {
        case SensitivityParam::beta1: return model.transfers.beta1;
        case SensitivityParam::beta0: return model.transfers.beta0;
        case SensitivityParam::lambda: return model.frictions.lambda_impl;
        case SensitivityParam::alpha: return model.beliefs.alpha;
        case SensitivityParam::sigma_h: return model.signal.sigma_h();
        case SensitivityParam::sigma_l: return model.signal.sigma_l();
        case SensitivityParam::mu_gap: return model.signal.mu1() - model.signal.mu0();
        case SensitivityParam::kappa: return model.payoff.kappa_scale;
    }
    return 0.0;
}

Model with_parameter(const Model& model, SensitivityParam which, double value) {
    Model m = model;
    switch (which) {
        case SensitivityParam::beta1: m.transfers.beta1 = value; break;
        case SensitivityParam::beta0: m.transfers.beta0 = value; break;
        case SensitivityParam::lambda: m.frictions.lambda_impl = value; break;
        case SensitivityParam::alpha: m.beliefs.alpha = value; break;
        case SensitivityParam::sigma_h: m.signal = m.signal.with_sigma_h(value); break;
        case SensitivityParam::sigma_l: m.signal = m.signal.with_sigma_l(value); break;
        case SensitivityParam::mu_gap: m.signal = m.signal.with_means(m.signal.mu0(), m.signal.mu0() + value); break;
        case SensitivityParam::kappa: m.payoff.kappa_scale = value; break;
    }
    m.validate();
    return m;
}

SensitivityResult sensitivity(const Model& model, SensitivityParam which, SensitivityMode mode) {
    const EquilibriumSolution base = solve_equilibrium(model);
    if (!base.interior()) throw SensitivityAtCorner(std::string("sensitivity at a corner equilibrium (") +
                                                    to_string(base.corner) + ")");
    const double c = base.cutoff;

    auto cutoff_at = [&](double value) -> std::optional<double> {
        Model m;
        try {
            m = with_parameter(model, which, value);
        } catch (const InvalidArgument&) {
            return std::nullopt;
        }
        if (mode == SensitivityMode::best_response) {
            const EquilibriumSolution br = best_response(m, c);
            if (!br.interior()) throw SensitivityAtCorner("perturbed best response is a corner");
            return br.cutoff;
        }
        const EquilibriumSolution sol = solve_equilibrium(m);
        if (!sol.interior()) throw SensitivityAtCorner("perturbed equilibrium is a corner");
        // Follow the branch through the base root.
        return *std::min_element(sol.all_roots.begin(), sol.all_roots.end(),
                                 [c](double x, double y) { return std::abs(x - c) < std::abs(y - c); });
    };

    const double v = parameter_value(model, which);
    const double h = 1e-4 * std::max(std::abs(v), 1.0);
    SensitivityResult out;
    out.base_cutoff = c;
    const auto up = cutoff_at(v + h);
    const auto down = cutoff_at(v - h);
    if (up && down) {
        out.finite_diff = (*up - *down) / (2.0 * h);
    } else if (down) {
        // second-order backward difference at the domain's upper edge
        const auto down2 = cutoff_at(v - 2.0 * h);
        if (!down2) throw InvalidArgument(to_string(which), "no room for a finite difference");
        out.finite_diff = (3.0 * c - 4.0 * *down + *down2) / (2.0 * h);
    } else if (up) {
        const auto up2 = cutoff_at(v + 2.0 * h);
        if (!up2) throw InvalidArgument(to_string(which), "no room for a finite difference");
        out.finite_diff = (-3.0 * c + 4.0 * *up - *up2) / (2.0 * h);
    } else {
        throw InvalidArgument(to_string(which), "no room for a finite difference");
    }

    const AdvantageEval e = evaluate_advantage(model, c, c);
    const double denom = mode == SensitivityMode::equilibrium ? e.ds + e.dconjecture : e.ds;
    const double lam = model.frictions.lambda_impl;
    switch (which) {
        case SensitivityParam::beta1: out.analytic = -(lam * e.success_prob) / denom; break;
        case SensitivityParam::beta0: out.analytic = (lam * (1.0 - e.success_prob)) / denom; break;
        case SensitivityParam::lambda: out.analytic = -((e.value - model.payoff.phi) / lam) / denom; break;
        default: break;
    }
    return out;
}

}  // namespace repcut
