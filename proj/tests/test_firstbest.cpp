#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "volhaz/firstbest.hpp"

using namespace volhaz;

namespace {

struct Setup {
    Preferences prefs{1.0, 1.0, 1.0};
    MarketModel market;
    QuadraticCost cost;
    Setup() {
        market.d = 2;
        market.b = {1.0, 1.0};
        cost.alpha = {0.0, 0.0};
        cost.beta = {1.0, 1.0};
    }
};

}  // namespace

TEST_CASE("f vanishes at the origin with zero exposures") {
    Setup s;
    CHECK(f_rate({0.0, 0.0}, s.market, s.cost, s.prefs) == 0.0);
}

TEST_CASE("no premium, no exposure: first best is zero") {
    Setup s;
    s.market.b = {0.0, 0.0};
    FirstBestSolution fb = first_best_volatility(s.market, s.cost, s.prefs);
    CHECK(fb.v_fb[0] == 0.0);
    CHECK(fb.v_fb[1] == 0.0);
    CHECK(fb.f_rate == 0.0);
}

TEST_CASE("symmetric baseline: v_fb = 2/3 and the grid oracle agrees") {
    Setup s;
    FirstBestSolution fb = first_best_volatility(s.market, s.cost, s.prefs);
    CHECK(fb.v_fb[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(fb.v_fb[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(fb.f_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    auto f = [&](const std::vector<double>& v) { return f_rate(v, s.market, s.cost, s.prefs); };
    std::vector<double> v_grid = oracles::separable_grid_argmax(f, 2, -5.0, 5.0, 1e-3);
    CHECK(std::fabs(v_grid[0] - fb.v_fb[0]) < 1e-6);
    CHECK(std::fabs(v_grid[1] - fb.v_fb[1]) < 1e-6);
    CHECK(first_best_certainty_equivalent_rate(s.market, s.cost, s.prefs) ==
          doctest::Approx(fb.f_rate));
}

TEST_CASE("zero-cost first best is b / Rbar") {
    Setup s;
    s.cost.zero_cost = true;
    s.market.b = {1.0, 0.0};
    FirstBestSolution fb = first_best_volatility(s.market, s.cost, s.prefs);
    CHECK(fb.v_fb[0] == doctest::Approx(2.0));
    CHECK(fb.v_fb[1] == doctest::Approx(0.0));

    // calculus oracle with b = (1, 0.5), Rbar = 1: argmax of f is b itself
    Preferences prefs{2.0, 2.0, 1.0};
    s.market.b = {1.0, 0.5};
    FirstBestSolution fb2 = first_best_volatility(s.market, s.cost, prefs);
    CHECK(fb2.v_fb[0] == doctest::Approx(1.0));
    CHECK(fb2.v_fb[1] == doctest::Approx(0.5));
    auto f = [&](const std::vector<double>& v) { return f_rate(v, s.market, s.cost, prefs); };
    std::vector<double> v_grid = oracles::separable_grid_argmax(f, 2, -5.0, 5.0, 1e-3);
    CHECK(std::fabs(v_grid[0] - 1.0) < 1e-6);
    CHECK(std::fabs(v_grid[1] - 0.5) < 1e-6);
}

TEST_CASE("contract fields: slope in (0,1), cash constant closed form") {
    Preferences prefs{2.0, 3.0, 1.5};
    Setup s;
    FirstBestSolution fb = first_best_volatility(s.market, s.cost, prefs);
    CHECK(fb.contract_slope == doctest::Approx(3.0 / 5.0));
    CHECK(fb.contract_cost_coeff == doctest::Approx(2.0 / 5.0));
    CHECK(fb.contract_cash == doctest::Approx(std::log(1.5 * 2.0 / 3.0) / 5.0));
    CHECK(fb.contract_slope > 0.0);
    CHECK(fb.contract_slope < 1.0);
}

TEST_CASE("property: gradient of f vanishes at v_fb; formula recomputes") {
    oracles::ParamSampler rng(505);
    for (int trial = 0; trial < 100; ++trial) {
        Setup s;
        Preferences prefs{rng.uniform(0.2, 5.0), rng.uniform(0.2, 5.0), 1.0};
        s.market.b = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        s.cost.alpha = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        s.cost.beta = {rng.uniform(0.2, 5.0), rng.uniform(0.2, 5.0)};
        FirstBestSolution fb = first_best_volatility(s.market, s.cost, prefs);

        const double h = 1e-5;
        for (int i = 0; i < 2; ++i) {
            std::vector<double> vp = fb.v_fb, vm = fb.v_fb;
            vp[static_cast<std::size_t>(i)] += h;
            vm[static_cast<std::size_t>(i)] -= h;
            const double grad = (f_rate(vp, s.market, s.cost, prefs) -
                                 f_rate(vm, s.market, s.cost, prefs)) /
                                (2.0 * h);
            CHECK(std::fabs(grad) < 1e-6);
            const double rbar = prefs.aggregate_risk_aversion();
            const double formula =
                (s.market.b[i] + s.cost.beta[static_cast<std::size_t>(i)] *
                                     s.cost.alpha[static_cast<std::size_t>(i)]) /
                (s.cost.beta[static_cast<std::size_t>(i)] + rbar);
            CHECK(fb.v_fb[static_cast<std::size_t>(i)] ==
                  doctest::Approx(formula).epsilon(1e-15));
        }
        // maximality over random probes
        for (int i = 0; i < 100; ++i) {
            std::vector<double> v{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
            CHECK(f_rate(v, s.market, s.cost, prefs) <= fb.f_rate + 1e-9);
        }
    }
}
