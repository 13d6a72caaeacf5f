#include "repcut/cli.hpp"

#include "repcut/config.hpp"
#include "repcut/contract.hpp"
#include "repcut/simulate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

namespace repcut {

namespace {

constexpr const char* kVersion = "repcut 1.0.0";

constexpr const char* kSolveHeader =
    "pi,cutoff,pi_success,pi_failure,pi_safe,p_c,rho_high_type,rho_unconditional,rd_derivative,n_roots,flags";

struct Solved {
    EquilibriumSolution solution;
    AdvantageOptions options;
};

Solved solve_config(const ModelConfig& cfg) {
    if (!cfg.committee) return {solve_equilibrium(cfg.model), {}};
    const CommitteeCutoff cc = committee_cutoff(cfg.model, *cfg.committee, cfg.committee_member);
    AdvantageOptions opt;
    opt.success_weight = cc.zeta_success;
    opt.failure_weight = cc.zeta_failure;
    return {cc.solution, opt};
}

std::string solve_row(const ModelConfig& cfg) {
    const Model& m = cfg.model;
    const Solved s = solve_config(cfg);
    const EquilibriumSolution& sol = s.solution;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool interior = sol.interior();
    const bool defined = sol.corner != CornerKind::indeterminate;

    std::string flags;
    auto flag = [&flags](const char* f) {
        if (!flags.empty()) flags += ';';
        flags += f;
    };
    if (!interior) flag(to_string(sol.corner));
    if (sol.off_path) flag("off_path");
    if (sol.all_roots.size() > 1) flag("multiple_roots");
    if (m.transfers.ll_violation()) flag("ll_violation");
    if (cfg.committee) flag("blocked_as_unobserved");

    const double c = sol.cutoff;
    std::string row;
    for (const double v : {m.beliefs.pi, c, sol.posteriors.pi_success, sol.posteriors.pi_failure,
                           sol.posteriors.pi_safe, interior ? success_prob_at(m.signal, m.beliefs.alpha, c) : nan,
                           defined ? experimentation_rate(m.signal, m.beliefs, c) : nan,
                           defined ? experimentation_rate(m.signal, m.beliefs, c, RateConvention::unconditional) : nan,
                           interior ? rd_derivative(m, c, s.options) : nan}) {
        row += format_number(v);
        row += ',';
    }
    row += std::to_string(sol.all_roots.size());
    row += ',';
    row += flags;
    return row;
}

ModelConfig apply_sweep(const ModelConfig& cfg, const std::string& param, double value) {
    ModelConfig out = cfg;
    if (param == "pi") {
        out.model.beliefs.pi = value;
        out.model.validate();
        return out;
    }
    const auto which = parse_sensitivity_param(param);
    if (!which) throw InvalidArgument("param", "unknown sweep parameter '" + param + "'");
    out.model = with_parameter(cfg.model, *which, value);
    return out;
}

std::vector<double> grid(double from, double to, int points) {
    detail::require(points >= 1, "points", "must be >= 1");
    detail::require(std::isfinite(from) && std::isfinite(to), "from", "range must be finite");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = points == 1 ? from : from + (to - from) * i / (points - 1);
    if (points > 1) g.back() = to;
    return g;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reputational cutoff equilibria: solve, sweep, calibrate and simulate", "repcut"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    std::string dump_path;
    auto* dump_opt = app.add_option("--dump-config", dump_path,
                                    "Print the fully expanded config (baseline if no path) and exit")
                         ->expected(0, 1);

    std::string config_path;
    std::optional<double> pi_override;
    auto* solve = app.add_subcommand("solve", "Solve the equilibrium and print one CSV row");
    solve->add_option("config", config_path, "Model config (JSON)")->required();
    solve->add_option("--pi", pi_override, "Override beliefs.pi");

    std::string param;
    double from = 0.0;
    double to = 1.0;
    int points = 21;
    auto* sweep = app.add_subcommand("sweep", "Solve over a parameter grid");
    sweep->add_option("config", config_path, "Model config (JSON)")->required();
    sweep->add_option("--param", param, "pi, beta1, beta0, lambda, alpha, sigma_h, sigma_l, mu_gap or kappa")
        ->required();
    sweep->add_option("--from", from, "First grid value")->required();
    sweep->add_option("--to", to, "Last grid value")->required();
    sweep->add_option("--points", points, "Grid size")->capture_default_str();

    std::vector<double> targets;
    auto* calibrate_cmd = app.add_subcommand("calibrate", "Back out the success bonus for target rates");
    calibrate_cmd->add_option("config", config_path, "Model config (JSON)")->required();
    calibrate_cmd->add_option("--rho-star", targets, "Target high-type rates")->required()->delimiter(',');

    std::uint64_t episodes = 1000000;
    std::uint64_t seed = 42;
    std::optional<double> cutoff;
    unsigned threads = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo check against the analytic history law");
    simulate_cmd->add_option("config", config_path, "Model config (JSON)")->required();
    simulate_cmd->add_option("--episodes", episodes, "Number of episodes")->capture_default_str();
    simulate_cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    simulate_cmd->add_option("--cutoff", cutoff, "Cutoff to simulate (default: solved equilibrium)");
    simulate_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (dump_opt->count() > 0) {
            out << dump_config(dump_path.empty() ? ModelConfig{} : load_config(dump_path));
            return kExitOk;
        }
        if (app.get_subcommands().empty()) {
            err << app.help();
            return kExitInvalidInput;
        }

        ModelConfig cfg = load_config(config_path);

        if (solve->parsed()) {
            if (pi_override) {
                cfg.model.beliefs.pi = *pi_override;
                cfg.validate();
            }
            out << kSolveHeader << '\n' << solve_row(cfg) << '\n';
        } else if (sweep->parsed()) {
            const std::vector<double> values = grid(from, to, points);
            std::vector<ModelConfig> models;
            for (const double v : values) models.push_back(apply_sweep(cfg, param, v));
            out << "param,value," << kSolveHeader << '\n';
            for (std::size_t i = 0; i < values.size(); ++i)
                out << param << ',' << format_number(values[i]) << ',' << solve_row(models[i]) << '\n';
        } else if (calibrate_cmd->parsed()) {
            for (const double t : targets)
                detail::require(t > 0.0 && t < 1.0, "rho_star", "targets must lie in (0,1)");
            std::vector<CalibrationRow> rows;
            for (const double t : targets) rows.push_back(calibrate(cfg.model, t));
            out << "rho_star,cutoff,p_h,beta1,ll_violation\n";
            for (const CalibrationRow& r : rows)
                out << format_number(r.rho_star) << ',' << format_number(r.cutoff) << ','
                    << format_number(r.p_h_at_cutoff) << ',' << format_number(r.beta1) << ','
                    << (r.ll_violation ? 1 : 0) << '\n';
        } else if (simulate_cmd->parsed()) {
            double c = 0.0;
            if (cutoff) {
                c = *cutoff;
            } else {
                const EquilibriumSolution sol = solve_config(cfg).solution;
                if (sol.corner == CornerKind::indeterminate) throw NoInteriorEquilibrium(sol.corner);
                c = sol.cutoff;
            }
            const SimSummary sim = simulate(cfg.model, c, episodes, seed, threads);
            out << "statistic,empirical,analytic,std_error,z\n";
            out << "episodes," << sim.n_episodes << ',' << sim.n_episodes << ",0,0\n";
            out << "cutoff," << format_number(c) << ',' << format_number(c) << ",0,0\n";
            for (const SimCheck& row : compare_to_analytic(cfg.model, c, sim))
                out << row.statistic << ',' << format_number(row.empirical) << ',' << format_number(row.analytic)
                    << ',' << format_number(row.std_error) << ',' << format_number(row.z) << '\n';
        }
        return kExitOk;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const ComputationError& e) {
        err << "computation failed: " << e.what() << '\n';
        return kExitComputation;
    }
}

}  // namespace repcut
