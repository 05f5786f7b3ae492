#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "volhaz/agent.hpp"

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

TEST_CASE("g vanishes at alpha with no incentive terms") {
    Setup s;
    s.cost.alpha = {0.7, -1.3};
    CHECK(g_value(s.cost.alpha, ContractControls{}, s.market, s.cost) == 0.0);
}

TEST_CASE("g: direct term-by-term examples") {
    Setup s;
    ContractControls c{0.0, 1.0, 0.0, 0.0, 0.0};
    CHECK(g_value({1.0, 1.0}, c, s.market, s.cost) == doctest::Approx(1.0));

    Setup zc;
    zc.market.b = {1.0, 0.0};
    zc.cost.zero_cost = true;
    ContractControls c2{0.0, 0.5, -0.25, 0.0, 0.0};
    CHECK(g_value({2.0, 0.0}, c2, zc.market, zc.cost) == doctest::Approx(0.5));
}

TEST_CASE("g rejects dimension mismatch") {
    Setup s;
    CHECK_THROWS_AS(g_value({1.0}, ContractControls{}, s.market, s.cost),
                    std::invalid_argument);
}

TEST_CASE("best response: no incentives keeps the initial exposure") {
    Setup s;
    s.cost.alpha = {0.4, -2.0};
    AgentResponse r = best_response(ContractControls{}, s.market, s.cost, s.prefs);
    REQUIRE(r.kind == ResponseKind::Unique);
    CHECK(r.v_star[0] == doctest::Approx(0.4));
    CHECK(r.v_star[1] == doctest::Approx(-2.0));
}

TEST_CASE("best response: closed form against the grid oracle") {
    Setup s;
    s.cost.alpha = {0.0, 2.0};
    s.cost.beta = {1.0, 2.0};
    ContractControls c{0.0, 0.5, -1.0, 0.0, 0.0};
    AgentResponse r = best_response(c, s.market, s.cost, s.prefs);
    REQUIRE(r.kind == ResponseKind::Unique);
    CHECK(r.v_star[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.v_star[1] == doctest::Approx(1.5).epsilon(1e-12));

    auto g = [&](const std::vector<double>& v) { return g_value(v, c, s.market, s.cost); };
    std::vector<double> v_grid = oracles::separable_grid_argmax(g, 2, -5.0, 5.0, 1e-3);
    CHECK(std::fabs(v_grid[0] - r.v_star[0]) < 1e-6);
    CHECK(std::fabs(v_grid[1] - r.v_star[1]) < 1e-6);

    auto gv = G_value(c, s.market, s.cost, s.prefs);
    REQUIRE(gv.has_value());
    CHECK(*gv == doctest::Approx(g(v_grid)).epsilon(1e-9));
    CHECK(*gv == doctest::Approx(-0.5625));
}

TEST_CASE("best response: indifference at the boundary contract") {
    Setup s;
    s.cost.alpha = {1.0, 2.0};
    s.cost.beta = {2.0, 1.0};  // min beta on coordinate 2
    const double z = -s.cost.alpha[1] * s.cost.beta[1] / s.market.b[1];
    ContractControls c{0.0, z, s.cost.beta[1], 0.0, 0.0};
    AgentResponse r = best_response(c, s.market, s.cost, s.prefs);
    REQUIRE(r.kind == ResponseKind::IndifferentCoordinates);
    REQUIRE(r.free_coords.size() == 1);
    CHECK(r.free_coords[0] == 1);
    // determinate coordinate follows the unique-branch formula
    CHECK(r.v_star[0] ==
          doctest::Approx((z * 1.0 + 1.0 * 2.0) / (2.0 - 1.0)).epsilon(1e-12));

    // g is flat along the free coordinate
    auto gv = G_value(c, s.market, s.cost, s.prefs);
    REQUIRE(gv.has_value());
    std::vector<double> probe = r.v_star;
    for (double t = -100.0; t <= 100.0; t += 20.0) {
        probe[1] = t;
        CHECK(g_value(probe, c, s.market, s.cost) == doctest::Approx(*gv).epsilon(1e-12));
    }
}

TEST_CASE("best response: unbounded branches") {
    Setup s;
    // gammaX above min beta
    ContractControls c1{0.0, 0.0, 2.0 * s.cost.beta[1], 0.0, 0.0};
    CHECK(best_response(c1, s.market, s.cost, s.prefs).kind == ResponseKind::Unbounded);
    CHECK_FALSE(G_value(c1, s.market, s.cost, s.prefs).has_value());
    // equality with nonzero numerator
    ContractControls c2{0.0, 1.0, s.cost.beta[1], 0.0, 0.0};
    CHECK(best_response(c2, s.market, s.cost, s.prefs).kind == ResponseKind::Unbounded);
    // equality with zero numerator on one coordinate but gammaX > another beta
    Setup m;
    m.cost.beta = {0.5, 1.0};
    m.cost.alpha = {0.3, 0.0};
    ContractControls c3{0.0, 0.0, 1.0, 0.0, 0.0};  // = beta_2, > beta_1
    CHECK(best_response(c3, m.market, m.cost, m.prefs).kind == ResponseKind::Unbounded);
}

TEST_CASE("contractible steering: gamma1 moves only the first coordinate") {
    Setup s;
    s.market.d0 = 1;
    s.cost.alpha = {1.0, 1.0};
    s.cost.beta = {2.0, 1.0};
    ContractControls c{0.0, -0.5, 1.0, 0.0, -0.3};
    // beta_2 = gammaX = 1 and zX b_2 + alpha_2 beta_2 = -0.5 + 1 != 0? it is 0.5
    // -> pick zX so that coordinate 2 is exactly free:
    c.zX = -s.cost.alpha[1] * s.cost.beta[1] / s.market.b[1];  // -1
    c.gamma1 = 0.9;
    AgentResponse r = best_response(c, s.market, s.cost, s.prefs);
    REQUIRE(r.kind == ResponseKind::IndifferentCoordinates);
    CHECK(r.free_coords == std::vector<int>{1});
    CHECK(r.v_star[0] ==
          doctest::Approx((c.zX * 1.0 + 1.0 * 2.0 + c.gamma1) / (2.0 - 1.0)));
}

TEST_CASE("property: g(v) <= G with equality at v*") {
    oracles::ParamSampler rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        Setup s;
        s.cost.alpha = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        s.cost.beta = {rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)};
        s.market.b = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const double bmin = s.cost.min_beta();
        ContractControls c;
        c.zX = rng.uniform(-2.0, 2.0);
        c.gammaX = bmin - 1e-6 - rng.uniform(0.0, 3.0);
        AgentResponse r = best_response(c, s.market, s.cost, s.prefs);
        REQUIRE(r.kind == ResponseKind::Unique);
        auto gv = G_value(c, s.market, s.cost, s.prefs);
        REQUIRE(gv.has_value());
        CHECK(g_value(r.v_star, c, s.market, s.cost) ==
              doctest::Approx(*gv).epsilon(1e-12));
        for (int i = 0; i < 200; ++i) {
            std::vector<double> v{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
            CHECK(g_value(v, c, s.market, s.cost) <= *gv + 1e-9);
        }
    }
}

TEST_CASE("property: finite-difference sensitivity of v* in zX") {
    Setup s;
    s.cost.alpha = {0.5, -0.25};
    s.cost.beta = {1.5, 0.8};
    ContractControls c{0.0, 0.3, -0.6, 0.0, 0.0};
    const double h = 1e-6;
    ContractControls cp = c, cm = c;
    cp.zX += h;
    cm.zX -= h;
    auto rp = best_response(cp, s.market, s.cost, s.prefs);
    auto rm = best_response(cm, s.market, s.cost, s.prefs);
    for (int i = 0; i < 2; ++i) {
        const double fd =
            (rp.v_star[static_cast<std::size_t>(i)] - rm.v_star[static_cast<std::size_t>(i)]) /
            (2.0 * h);
        const double closed =
            s.market.b[i] / (s.cost.beta[static_cast<std::size_t>(i)] - c.gammaX);
        CHECK(fd == doctest::Approx(closed).epsilon(1e-6));
    }
}
