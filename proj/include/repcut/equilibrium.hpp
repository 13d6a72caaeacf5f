#pragma once

#include "repcut/belief.hpp"
#include "repcut/errors.hpp"
#include "repcut/payoffs.hpp"
#include "repcut/signal_model.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace repcut {

// Everything the expert and the market take as given in one episode.
struct Model {
    SignalModel signal{0.0, 1.0, 1.0, 1.7};
    BeliefState beliefs{};
    PayoffSpec payoff{};
    TransferSpec transfers{};
    FrictionSpec frictions{};

    void validate() const;
    friend bool operator==(const Model&, const Model&) = default;
};

// Extra structure on the risky branch beyond the model itself.
struct AdvantageOptions {
    // Signal the expert uses to form p_H(s); the market always uses
    // Model::signal. Set for overconfidence.
    std::optional<SignalModel> perceived_signal;
    // Probability the realized success / failure actually counts (committee
    // pivotality). Multiplies lambda.
    double success_weight = 1.0;
    double failure_weight = 1.0;
};

// Decomposition of the risky-safe advantage at signal s against a market
// that conjectures `conjecture`.
struct AdvantageEval {
    double value = 0.0;
    double ds = 0.0;           // partial derivative in s (market fixed)
    double dconjecture = 0.0;  // partial derivative in the conjecture
    double success_prob = 0.0; // observed-success probability at s
    double success_gain = 0.0; // V(pi+) - V(pi~) + beta1
    double failure_gain = 0.0; // V(pi-) - V(pi~) - beta0
    PosteriorSet posteriors;
};

AdvantageEval evaluate_advantage(const Model& model, double s, double conjecture, const AdvantageOptions& options = {});

// phi + lambda [p(s)(V(pi+) - V(pi~)) + (1-p(s))(V(pi-) - V(pi~)) + E transfer],
// posteriors taken at the conjecture.
double advantage(const Model& model, double s, double conjecture, const AdvantageOptions& options = {});

struct EquilibriumSolution {
    double cutoff = 0.0;  // +/-inf for corners, NaN when indeterminate
    PosteriorSet posteriors;
    double success_prob_at_cutoff = 0.0;
    double experimentation_rate = 0.0;  // high-type convention
    std::vector<double> all_roots;
    bool off_path = false;
    double residual = 0.0;
    CornerKind corner = CornerKind::interior;
    // Total slope of c -> advantage(c; c) at the cutoff.
    double equilibrium_slope = 0.0;
    int discarded_brackets = 0;

    bool interior() const noexcept { return corner == CornerKind::interior; }
    // Throws NoInteriorEquilibrium for corners.
    const EquilibriumSolution& require_interior() const;
};

inline constexpr int kScanPoints = 400;
inline constexpr double kScanWidthSigmas = 8.0;
inline constexpr double kResidualTolerance = 1e-9;
inline constexpr int kMaxIterations = 200;

// Scans [mu0 - 8 sigma_L, mu1 + 8 sigma_L] for sign changes of
// c -> advantage(c; c), polishes every bracket by safeguarded Newton, and
// returns the smallest on-path root as the cutoff (the smallest off-path root
// only when no on-path root exists).
EquilibriumSolution solve_equilibrium(const Model& model, const AdvantageOptions& options = {});

// Best response to a fixed market conjecture: the unique root in s of
// advantage(s; conjecture). Corners are reported like solve_equilibrium.
EquilibriumSolution best_response(const Model& model, double conjecture, const AdvantageOptions& options = {});

enum class RateConvention { high_type, unconditional };

double experimentation_rate(const MlrpSignal& signal, const BeliefState& beliefs, double c,
                            RateConvention convention = RateConvention::high_type);

// d/dpi of advantage(c; c) by central differences (step 1e-5, kept inside
// (0,1)). Nonpositive values are the relative-diagnosticity region.
double rd_derivative(const Model& model, double c, const AdvantageOptions& options = {});

struct SweepRow {
    double pi = 0.0;
    EquilibriumSolution solution;
    double rate = 0.0;
    double rd = 0.0;  // NaN at corners
};

struct ConservatismReport {
    std::vector<SweepRow> rows;
    // Index i flags the pair (i, i+1): rd <= 0 at both and the cutoff strictly falls.
    std::vector<std::size_t> violations;
};

// Solves at each pi (sorted, interior) and checks that the cutoff never falls
// between two points where relative diagnosticity holds.
ConservatismReport conservatism_sweep(const Model& model, std::span<const double> pi_grid);

enum class SensitivityParam { beta1, beta0, lambda, alpha, sigma_h, sigma_l, mu_gap, kappa };

const char* to_string(SensitivityParam p) noexcept;
std::optional<SensitivityParam> parse_sensitivity_param(std::string_view name);

enum class SensitivityMode {
    // Market re-solves: slope of the consistent fixed point.
    equilibrium,
    // Market conjecture held at the solved cutoff; the expert's best response moves.
    best_response,
};

struct SensitivityResult {
    std::optional<double> analytic;  // implicit-function formula (beta1, beta0, lambda)
    double finite_diff = 0.0;        // central difference, relative step 1e-4
    double base_cutoff = 0.0;
};

double parameter_value(const Model& model, SensitivityParam which);
Model with_parameter(const Model& model, SensitivityParam which, double value);

SensitivityResult sensitivity(const Model& model, SensitivityParam which,
                              SensitivityMode mode = SensitivityMode::equilibrium);

}  // namespace repcut
