#pragma once

#include "repcut/equilibrium.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace repcut {

// n experts vote independently given omega; the committee implements when at
// least k vote yes. member_yes_probs[j] = {Pr(a^j=1|omega=0), Pr(a^j=1|omega=1)}.
struct CommitteeSpec {
    int n = 1;
    int k = 1;
    std::vector<std::array<double, 2>> member_yes_probs{{0.5, 0.5}};

    void validate() const;
    friend bool operator==(const CommitteeSpec&, const CommitteeSpec&) = default;
};

// Pr(exactly k-1 of the other n-1 members vote yes | omega).
double pivotality(const CommitteeSpec& spec, std::size_t member, State omega);

struct CommitteeCutoff {
    EquilibriumSolution solution;
    double zeta_success = 1.0;
    double zeta_failure = 1.0;
    // Blocked implementation is scored like the recommendation-only event.
    bool blocked_as_unobserved = true;
};

// Member's equilibrium with the success term scaled by zeta_1 and the failure
// term by zeta_0. Corners are returned, not thrown.
CommitteeCutoff committee_cutoff(const Model& model, const CommitteeSpec& spec, std::size_t member);

// lambda(T), piecewise linear through (threshold, lambda) knots, flat beyond
// the ends. Knots must be strictly increasing in T and nonincreasing in lambda.
class GatekeepingSchedule {
public:
    GatekeepingSchedule(std::vector<double> thresholds, std::vector<double> lambdas);

    double lambda_at(double threshold) const;
    const std::vector<double>& thresholds() const noexcept { return t_; }

private:
    std::vector<double> t_;
    std::vector<double> lambda_;
};

struct GatekeepingRow {
    double threshold = 0.0;
    double lambda = 1.0;
    EquilibriumSolution solution;
};

std::vector<GatekeepingRow> gatekeeping_sweep(const Model& model, const GatekeepingSchedule& schedule,
                                              const std::vector<double>& thresholds);

struct OverconfidenceWedge {
    double perceived_cutoff = 0.0;
    double actual_cutoff = 0.0;
    double rate_wedge = 0.0;  // rho(perceived) - rho(actual), high-type convention
};

// The expert forms p_H with perceived_sigma_h; the market keeps the true
// signal. Requires 0 < perceived_sigma_h <= sigma_h.
OverconfidenceWedge overconfidence_wedge(const Model& model, double perceived_sigma_h);

}  // namespace repcut
