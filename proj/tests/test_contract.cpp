#include "oracles.hpp"

#include "repcut/contract.hpp"

#include <doctest.h>

#include <cmath>

using namespace repcut;

namespace {

Model baseline(double beta1 = 0.022) {
    Model m;
    m.transfers.beta1 = beta1;
    return m;
}

// Success bonus that zeroes the oracle advantage at c, frictionless, phi = 0.
double oracle_beta1(double c) {
    const oracle::Gaussian g;
    const auto q = oracle::posteriors(g, 0.5, 0.5, c);
    const double p = g.p(0.5, c);
    return (q.safe * q.safe - p * q.plus * q.plus - (1 - p) * q.minus * q.minus) / p;
}

}  // namespace

TEST_CASE("cutoff for target rate") {
    const Model m;
    CHECK(cutoff_for_target(m.signal, m.beliefs, 0.2) == doctest::Approx(1.44976896).epsilon(1e-8));
    CHECK(cutoff_for_target(m.signal, m.beliefs, 0.8) == doctest::Approx(-0.44976896).epsilon(1e-8));
    CHECK(cutoff_for_target(m.signal, m.beliefs, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
    for (double r = 0.05; r < 1.0; r += 0.05) {
        const double c = cutoff_for_target(m.signal, m.beliefs, r);
        CHECK(std::abs(experimentation_rate(m.signal, m.beliefs, c) - r) <= 1e-10);
    }
    CHECK_THROWS_AS(cutoff_for_target(m.signal, m.beliefs, 0.0), InvalidArgument);
    CHECK_THROWS_AS(cutoff_for_target(m.signal, m.beliefs, 1.0), InvalidArgument);
}

TEST_CASE("bonus back-out against the closed form") {
    const Model m = baseline(0.0);
    for (double c : {-0.45, 0.0637689, 0.5, 0.936, 1.45, 2.0})
        CHECK(beta1_backout(m, c) == doctest::Approx(oracle_beta1(c)).epsilon(1e-8));
    CHECK(beta1_backout(m, 1.45) == doctest::Approx(0.160).epsilon(2e-3 / 0.160));
    CHECK(beta1_backout(m, -0.45) == doctest::Approx(-0.423).epsilon(2e-3 / 0.423));
}

TEST_CASE("constant reputation payoff needs no bonus") {
    Model m = baseline(0.0);
    m.payoff.kappa_scale = 0.0;
    for (double c : {-1.0, 0.3, 1.7}) CHECK(beta1_backout(m, c) == 0.0);
}

TEST_CASE("degenerate success probability") {
    const Model m = baseline(0.0);
    CHECK_THROWS_AS(beta1_backout(m, -60.0), DegenerateSuccessProb);
}

TEST_CASE("calibration rows") {
    const Model m = baseline(0.0);
    auto row = calibrate(m, 0.35);
    CHECK(row.cutoff == doctest::Approx(0.936).epsilon(2e-3));
    CHECK(row.p_h_at_cutoff == doctest::Approx(0.607).epsilon(2e-3));
    CHECK(row.beta1 == doctest::Approx(0.101).epsilon(2e-2));
    CHECK_FALSE(row.ll_violation);
    row = calibrate(m, 0.65);
    CHECK(row.cutoff == doctest::Approx(0.064).epsilon(2e-2));
    CHECK(row.beta1 == doctest::Approx(-0.117).epsilon(2e-2));
    CHECK(row.ll_violation);
}

TEST_CASE("calibrating to the no-transfer rate gives a zero bonus") {
    const Model m = baseline(0.0);
    const auto sol = solve_equilibrium(m);
    REQUIRE(sol.interior());
    const auto row = calibrate(m, experimentation_rate(m.signal, m.beliefs, sol.cutoff));
    CHECK(std::abs(row.beta1) <= 1e-6);
}

TEST_CASE("forward solve at the rounded table bonus") {
    // rho* = 0.5 has no rounding amplification
    const auto sol = solve_equilibrium(baseline(0.022));
    CHECK(sol.cutoff == doctest::Approx(0.5).epsilon(2e-3));
    const auto exact = solve_equilibrium(baseline(calibrate(baseline(0.0), 0.2).beta1));
    CHECK(exact.cutoff == doctest::Approx(1.450).epsilon(2e-3));
}

TEST_CASE("round trip over targets") {
    const Model m = baseline(0.0);
    for (int i = 1; i <= 9; ++i) {
        const double r = 0.1 * i;
        const auto row = calibrate(m, r);
        Model x = m;
        x.transfers.beta1 = row.beta1;
        const auto sol = solve_equilibrium(x);
        REQUIRE(sol.interior());
        CHECK(std::abs(experimentation_rate(x.signal, x.beliefs, sol.cutoff) - r) <= 1e-6);
    }
}

TEST_CASE("implementers line") {
    const Model m = baseline(0.0);
    const auto line = implementers_line(m, 0.2);
    CHECK(line.cutoff == doctest::Approx(1.44976896).epsilon(1e-8));
    CHECK(line.spot_check_error <= 1e-5);
    // the beta0 = 0 point is the table bonus
    CHECK(line.beta1_for(0.0) == doctest::Approx(calibrate(m, 0.2).beta1).epsilon(1e-10));
    CHECK(line.delta_hat == doctest::Approx(-line.success_coef * line.beta1_for(0.0)).epsilon(1e-12));
    Model a = m, b = m;
    a.transfers = {line.beta1_for(0.03), 0.03, false};
    b.transfers = {line.beta1_for(0.15), 0.15, false};
    const double ca = solve_equilibrium(a).cutoff;
    const double cb = solve_equilibrium(b).cutoff;
    CHECK(std::abs(ca - cb) <= 1e-8);
    CHECK(std::abs(ca - 1.450) <= 1e-3);
}

TEST_CASE("implementers line through the origin at the no-transfer rate") {
    const Model m = baseline(0.0);
    const auto sol = solve_equilibrium(m);
    const auto line = implementers_line(m, experimentation_rate(m.signal, m.beliefs, sol.cutoff));
    CHECK(std::abs(line.delta_hat) <= 1e-9);
    CHECK(std::abs(line.beta1_for(0.0)) <= 1e-8);
}

TEST_CASE("drho/dbeta1 with a constant payoff") {
    Model m = baseline(0.1);
    m.transfers.beta0 = 0.1;
    m.payoff.kappa_scale = 0.0;
    // advantage is 0.2 p - 0.1, root at p = 1/2, i.e. c = 0.5
    const double phi05 = std::exp(-0.125) / std::sqrt(2 * M_PI);
    const double dp = 0.25;  // p(1-p) * d(llr)/ds at c = 0.5 with unit gap and sigma
    const double expected = phi05 * (0.5 / (0.2 * dp));
    CHECK(drho_dbeta1(m) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(drho_dbeta1(m) == doctest::Approx(3.520653).epsilon(1e-6));
}

TEST_CASE("drho/dbeta1 matches finite differences") {
    for (double b1 : {0.022, 0.1}) {
        const Model m = baseline(b1);
        const double h = 1e-5;
        auto rho = [](const Model& x) {
            return experimentation_rate(x.signal, x.beliefs, solve_equilibrium(x).cutoff);
        };
        const double fd = (rho(baseline(b1 + h)) - rho(baseline(b1 - h))) / (2 * h);
        CHECK(drho_dbeta1(m) == doctest::Approx(fd).epsilon(1e-4));
    }
}
