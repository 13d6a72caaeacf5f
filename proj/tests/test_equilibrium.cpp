#include "oracles.hpp"

#include "repcut/equilibrium.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace repcut;

namespace {

Model baseline(double beta1 = 0.022) {
    Model m;
    m.transfers.beta1 = beta1;
    return m;
}

}  // namespace

TEST_CASE("advantage against the oracle") {
    const oracle::Gaussian g;
    oracle::Gen gen(21);
    for (int i = 0; i < 40; ++i) {
        Model m = baseline(gen.uniform(-0.2, 0.3));
        m.transfers.beta0 = gen.uniform(0.0, 0.2);
        m.payoff.phi = gen.uniform(-0.05, 0.05);
        m.beliefs = {gen.uniform(0.1, 0.9), gen.uniform(0.2, 0.8)};
        const double s = gen.uniform(-2, 3);
        const double conj = gen.uniform(-1, 2.5);
        CHECK(advantage(m, s, conj) ==
              doctest::Approx(oracle::advantage(g, m.beliefs.pi, m.beliefs.alpha, s, conj, m.transfers.beta1,
                                                m.transfers.beta0, m.payoff.phi))
                  .epsilon(1e-8));
    }
}

TEST_CASE("analytic partials match finite differences") {
    const Model m = baseline();
    for (double c : {-0.5, 0.5, 1.2}) {
        const auto e = evaluate_advantage(m, c, c);
        const double h = 1e-6;
        CHECK(e.ds == doctest::Approx((advantage(m, c + h, c) - advantage(m, c - h, c)) / (2 * h)).epsilon(1e-6));
        CHECK(e.dconjecture ==
              doctest::Approx((advantage(m, c, c + h) - advantage(m, c, c - h)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("baseline equilibrium") {
    const auto sol = solve_equilibrium(baseline());
    REQUIRE(sol.interior());
    CHECK(sol.cutoff == doctest::Approx(0.500545032390).epsilon(1e-9));
    CHECK(std::abs(sol.residual) <= kResidualTolerance);
    CHECK_FALSE(sol.off_path);
    // the second root is manufactured by the off-path clamp and is not chosen
    REQUIRE(sol.all_roots.size() == 2);
    CHECK(sol.all_roots[1] > 10.0);
    const oracle::Gaussian g;
    const double c = oracle::bisect([&](double x) { return oracle::advantage(g, 0.5, 0.5, x, x, 0.022); }, 0.0, 1.0);
    CHECK(sol.cutoff == doctest::Approx(c).epsilon(1e-8));
    CHECK(sol.experimentation_rate == doctest::Approx(experimentation_rate(Model{}.signal, Model{}.beliefs, sol.cutoff)));
}

TEST_CASE("symmetric point: zero-bonus cutoff sits at the midpoint") {
    // at c = 0.5 with alpha = 0.5, p = 1/2 and safe beliefs are unchanged
    const Model m = baseline(0.0);
    const auto e = evaluate_advantage(m, 0.5, 0.5);
    CHECK(e.success_prob == doctest::Approx(0.5));
    CHECK(e.posteriors.pi_safe == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("corners") {
    Model m = baseline(0.0);
    m.payoff.phi = 5.0;
    auto sol = solve_equilibrium(m);
    CHECK(sol.corner == CornerKind::all_risky);
    CHECK(sol.cutoff == -INFINITY);
    CHECK_THROWS_AS(sol.require_interior(), NoInteriorEquilibrium);
    m.payoff.phi = -5.0;
    sol = solve_equilibrium(m);
    CHECK(sol.corner == CornerKind::all_safe);
    CHECK(sol.cutoff == INFINITY);
    m.payoff.phi = 0.0;
    m.payoff.kappa_scale = 0.0;
    sol = solve_equilibrium(m);
    CHECK(sol.corner == CornerKind::indeterminate);
    CHECK(std::isnan(sol.cutoff));
}

TEST_CASE("residual tolerance on random draws") {
    oracle::Gen gen(31);
    int interior = 0;
    for (int i = 0; i < 60; ++i) {
        Model m;
        const double sh = gen.uniform(0.5, 1.5);
        const double mu0 = gen.uniform(-1, 1);
        m.signal = SignalModel(mu0, mu0 + gen.uniform(0.3, 2), sh, sh * gen.uniform(1.05, 2.5));
        m.beliefs = {gen.uniform(0.1, 0.9), gen.uniform(0.2, 0.8)};
        m.transfers.beta1 = gen.uniform(0.0, 0.2);
        const auto sol = solve_equilibrium(m);
        if (!sol.interior()) continue;
        ++interior;
        CHECK(std::abs(advantage(m, sol.cutoff, sol.cutoff)) <= kResidualTolerance);
    }
    CHECK(interior > 40);
}

TEST_CASE("best response to a fixed conjecture") {
    const Model m = baseline();
    const auto br = best_response(m, 0.500545032390);
    REQUIRE(br.interior());
    CHECK(br.cutoff == doctest::Approx(0.500545032390).epsilon(1e-8));
    CHECK(br.equilibrium_slope > 0.0);
}

TEST_CASE("experimentation rate conventions") {
    const Model m;
    CHECK(experimentation_rate(m.signal, m.beliefs, 0.5) == doctest::Approx(0.5));
    const oracle::Gaussian g;
    const double c = 0.8;
    const double high = 0.5 * g.r(true, 0, c) + 0.5 * g.r(true, 1, c);
    const double low = 0.5 * g.r(false, 0, c) + 0.5 * g.r(false, 1, c);
    CHECK(experimentation_rate(m.signal, m.beliefs, c) == doctest::Approx(high).epsilon(1e-9));
    CHECK(experimentation_rate(m.signal, m.beliefs, c, RateConvention::unconditional) ==
          doctest::Approx(0.5 * high + 0.5 * low).epsilon(1e-9));
}

TEST_CASE("sensitivity: analytic and finite differences agree") {
    const Model m = baseline();
    for (auto p : {SensitivityParam::beta1, SensitivityParam::beta0}) {
        for (auto mode : {SensitivityMode::equilibrium, SensitivityMode::best_response}) {
            const auto r = sensitivity(m, p, mode);
            REQUIRE(r.analytic);
            CHECK(*r.analytic == doctest::Approx(r.finite_diff).epsilon(1e-4));
        }
    }
    const auto lam = sensitivity(m, SensitivityParam::lambda);
    CHECK(std::abs(*lam.analytic) <= 1e-10);
    CHECK(std::abs(lam.finite_diff) <= 1e-10);
    const auto br = sensitivity(m, SensitivityParam::beta1, SensitivityMode::best_response);
    CHECK(*br.analytic < 0.0);
    CHECK(*br.analytic == doctest::Approx(-19.313).epsilon(1e-3));
}

TEST_CASE("lambda is neutral at phi = 0 and scales the gain otherwise") {
    Model m = baseline();
    const double c1 = solve_equilibrium(m).cutoff;
    m.frictions.lambda_impl = 0.4;
    CHECK(solve_equilibrium(m).cutoff == doctest::Approx(c1).epsilon(1e-10));
    m.payoff.phi = 0.01;
    const auto r = sensitivity(m, SensitivityParam::lambda);
    REQUIRE(r.analytic);
    CHECK(*r.analytic == doctest::Approx(r.finite_diff).epsilon(1e-4));
}

TEST_CASE("parameter plumbing") {
    const Model m = baseline();
    for (auto p : {SensitivityParam::beta1, SensitivityParam::beta0, SensitivityParam::lambda, SensitivityParam::alpha,
                   SensitivityParam::sigma_h, SensitivityParam::sigma_l, SensitivityParam::mu_gap,
                   SensitivityParam::kappa}) {
        CHECK(parse_sensitivity_param(to_string(p)) == p);
        const double v = parameter_value(m, p);
        CHECK(parameter_value(with_parameter(m, p, v), p) == doctest::Approx(v));
    }
    CHECK_FALSE(parse_sensitivity_param("nope"));
    CHECK(parameter_value(m, SensitivityParam::mu_gap) == 1.0);
    CHECK_THROWS_AS(with_parameter(m, SensitivityParam::sigma_h, 2.0), InvalidArgument);
}

TEST_CASE("rd derivative matches a direct difference") {
    const Model m = baseline();
    const double c = 0.7;
    Model up = m, dn = m;
    up.beliefs.pi += 1e-5;
    dn.beliefs.pi -= 1e-5;
    const double fd = (advantage(up, c, c) - advantage(dn, c, c)) / 2e-5;
    CHECK(rd_derivative(m, c) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("conservatism sweep reports violations") {
    const Model m = baseline();
    std::vector<double> grid;
    for (int i = 0; i < 21; ++i) grid.push_back(0.05 + 0.9 * i / 20);
    const auto rep = conservatism_sweep(m, grid);
    REQUIRE(rep.rows.size() == 21);
    for (std::size_t i : rep.violations) {
        CHECK(rep.rows[i].rd <= 0.0);
        CHECK(rep.rows[i + 1].rd <= 0.0);
        CHECK(rep.rows[i + 1].solution.cutoff < rep.rows[i].solution.cutoff);
    }
}
