#pragma once

#include "repcut/equilibrium.hpp"

namespace repcut {

// One column of the Gaussian calibration table.
struct CalibrationRow {
    double rho_star = 0.0;
    double cutoff = 0.0;
    double p_h_at_cutoff = 0.0;
    double beta1 = 0.0;  // may be negative
    bool ll_violation = false;
};

// The c solving (1-alpha) r_H(1|0;c) + alpha r_H(1|1;c) = rho_star, by
// bisection; |residual| <= 1e-10.
double cutoff_for_target(const MlrpSignal& signal, const BeliefState& beliefs, double rho_star);

// Success bonus that makes c the equilibrium cutoff (beta0 and phi taken from
// the model):
//   beta1 = [V(pi~) - p V(pi+) - (1-p) V(pi-)] / p   at phi = 0, beta0 = 0.
// Throws DegenerateSuccessProb when p_H(c) < 1e-12.
double beta1_backout(const Model& model, double c);

// cutoff_for_target + beta1_backout, then re-solves with the bonus and checks
// the cutoff is reproduced.
CalibrationRow calibrate(const Model& model, double rho_star);

// All (beta1, beta0) that implement rho_star lie on
//   success_coef * beta1 - failure_coef * beta0 = -delta_hat / lambda.
struct ImplementersLine {
    double cutoff = 0.0;        // c_hat, the cutoff delivering rho_star
    double delta_hat = 0.0;     // no-transfer advantage at c_hat
    double success_coef = 0.0;  // observed-success probability at c_hat
    double failure_coef = 0.0;  // 1 - success_coef
    double lambda = 1.0;

    double beta1_for(double beta0) const;
    // Largest |cutoff - c_hat| over the spot checks made on construction.
    double spot_check_error = 0.0;
};

ImplementersLine implementers_line(const Model& model, double rho_star);

// d rho / d beta1 at the solved equilibrium:
//   [(1-alpha) f_H(s*|0) + alpha f_H(s*|1)] * (-d s*/d beta1).
double drho_dbeta1(const Model& model, SensitivityMode mode = SensitivityMode::equilibrium);

}  // namespace repcut
