#include "oracles.hpp"

#include "repcut/errors.hpp"
#include "repcut/payoffs.hpp"

#include <doctest.h>

using namespace repcut;

TEST_CASE("power family") {
    const PayoffSpec sq{};
    CHECK(eval_V(sq, 0.5) == 0.25);
    CHECK(eval_V_slope(sq, 0.5) == 1.0);
    const PayoffSpec lin{PowerFamily{1.0}, 0.0, 1.0};
    CHECK(eval_V(lin, 0.3) == 0.3);
    CHECK(eval_V_slope(lin, 0.0) == 1.0);
    CHECK(sq.satisfies_career_assumption());
    CHECK_THROWS_AS(eval_V(sq, 1.2), InvalidArgument);
    CHECK_THROWS_AS(eval_V(sq, -0.1), InvalidArgument);
    CHECK_THROWS_AS((PayoffSpec{PowerFamily{0.5}, 0.0, 1.0}.validate()), InvalidArgument);
}

TEST_CASE("convexity on a grid") {
    oracle::Gen gen(9);
    for (int i = 0; i < 20; ++i) {
        const PayoffSpec spec{PowerFamily{gen.uniform(1.0, 4.0)}, 0.0, gen.uniform(0.1, 3.0)};
        for (double x = 0.02; x <= 0.98; x += 0.02) {
            const double h = 0.01;
            CHECK(eval_V(spec, x - h) + eval_V(spec, x + h) - 2 * eval_V(spec, x) >= -1e-15);
            CHECK(eval_V(spec, x + h) > eval_V(spec, x));
        }
    }
}

TEST_CASE("kappa scales V linearly") {
    for (double kappa : {0.0, 0.5, 2.0, 7.0})
        for (double x = 0.0; x <= 1.0; x += 0.125) {
            const PayoffSpec spec{PowerFamily{2.0}, 0.0, kappa};
            CHECK(eval_V(spec, x) == doctest::Approx(kappa * x * x));
            CHECK(eval_V_slope(spec, x) == doctest::Approx(kappa * 2 * x));
        }
}

TEST_CASE("loss-averse family kink") {
    LossAverseFamily f;
    f.v0 = 0.1;
    f.bench_pi = 0.6;
    f.slope_b = 2.0;
    f.loss_aversion = 1.5;
    f.kappa_plus = 0.4;
    f.kappa_minus = 0.2;
    CHECK(f.value(0.6) == doctest::Approx(0.1));
    CHECK(f.value(0.8) == doctest::Approx(0.1 + 2.0 * 0.2 + 0.5 * 0.4 * 0.04));
    CHECK(f.value(0.5) == doctest::Approx(0.1 - 1.5 * 2.0 * 0.1 + 0.5 * 0.2 * 0.01));
    CHECK(f.slope(0.6) == doctest::Approx(2.0));       // right derivative
    CHECK(f.left_slope(0.6) == doctest::Approx(3.0));  // lambda * b
    const double h = 1e-7;
    CHECK((f.value(0.6 + h) - f.value(0.6)) / h == doctest::Approx(2.0).epsilon(1e-5));
    CHECK((f.value(0.6) - f.value(0.6 - h)) / h == doctest::Approx(3.0).epsilon(1e-5));
    CHECK_FALSE(f.convex());
    f.loss_aversion = 1.0;
    CHECK(f.convex());
    CHECK((PayoffSpec{f, 0.0, 1.0}.satisfies_career_assumption()));
    f.loss_aversion = 0.5;
    CHECK_THROWS_AS(f.validate(), InvalidArgument);
}

TEST_CASE("transfers") {
    const TransferSpec t{0.2, 0.1, false};
    CHECK(transfer_wedge(t, 0.5) == doctest::Approx(0.05));
    CHECK(expected_transfer(t, 0.7) == doctest::Approx(0.7 * 0.2 - 0.3 * 0.1));
    CHECK(t.ll_violation());
    CHECK_THROWS_AS((TransferSpec{-0.1, 0.0, true}.validate()), InvalidArgument);
    CHECK_THROWS_AS((TransferSpec{0.1, 0.1, true}.validate()), InvalidArgument);
    CHECK_THROWS_AS((TransferSpec{0.1, -0.1, false}.validate()), InvalidArgument);
    CHECK_NOTHROW((TransferSpec{-0.1, 0.0, false}.validate()));
    CHECK_FALSE((TransferSpec{0.1, 0.0, true}.ll_violation()));
}
