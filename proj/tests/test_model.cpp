#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "volhaz/model.hpp"

using namespace volhaz;

namespace {

MarketModel basic_market() {
    MarketModel m;
    m.d = 2;
    m.b = {1.0, 1.0};
    return m;
}

QuadraticCost basic_cost() {
    QuadraticCost c;
    c.alpha = {0.0, 0.0};
    c.beta = {1.0, 1.0};
    return c;
}

}  // namespace

TEST_CASE("validate accepts the baseline parameter set") {
    CHECK(validate(Preferences{1.0, 1.0, 1.0}, basic_market(), basic_cost()).ok());
}

TEST_CASE("validate flags non-positive beta") {
    QuadraticCost cost = basic_cost();
    cost.beta = {1.0, 0.0};
    auto rep = validate(Preferences{}, basic_market(), cost);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("beta must be strictly positive") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate flags a singular sigma") {
    MarketModel market = basic_market();
    market.sigma = {0.0, 0.0, 0.0, 0.0};
    auto rep = validate(Preferences{}, market, basic_cost());
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("sigma singular") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate reports non-finite inputs as violations, never throws") {
    Preferences prefs;
    prefs.R_A = std::numeric_limits<double>::quiet_NaN();
    MarketModel market = basic_market();
    market.b = {std::numeric_limits<double>::infinity(), 0.0};
    CHECK_FALSE(validate(prefs, market, basic_cost()).ok());
}

TEST_CASE("aggregate risk aversion matches the harmonic form") {
    oracles::ParamSampler rng(101);
    for (int i = 0; i < 200; ++i) {
        Preferences p{rng.uniform(0.1, 8.0), rng.uniform(0.1, 8.0), 1.0};
        const double direct = 1.0 / (1.0 / p.R_A + 1.0 / p.R_P);
        CHECK(p.aggregate_risk_aversion() ==
              doctest::Approx(direct).epsilon(1e-15));
        // symmetric and strictly below both components
        Preferences q{p.R_P, p.R_A, 1.0};
        CHECK(p.aggregate_risk_aversion() ==
              doctest::Approx(q.aggregate_risk_aversion()).epsilon(1e-15));
        CHECK(p.aggregate_risk_aversion() < std::min(p.R_A, p.R_P));
    }
}

TEST_CASE("integrand mapping: stated examples") {
    // all-zero controls
    Integrands z = integrands_from_controls(ContractControls{}, Preferences{}, 0.0);
    CHECK(z.yX == 0.0);
    CHECK(z.y1 == 0.0);
    CHECK(z.h == 0.0);

    ContractControls c1{0.0, 1.0, 0.0, 0.0, 0.0};
    Integrands i1 = integrands_from_controls(c1, Preferences{2.0, 1.0, 1.0}, 0.0);
    CHECK(i1.yX == doctest::Approx(1.0));  // (0 + 2*1^2)/2

    ContractControls c2{0.0, 1.0, 0.0, 1.0, 0.5};
    Integrands i2 = integrands_from_controls(c2, Preferences{1.0, 1.0, 1.0}, 3.0);
    CHECK(i2.y1 == doctest::Approx(1.5));
    CHECK(i2.h == doctest::Approx(-2.5));
}

TEST_CASE("integrand mapping round-trips exactly") {
    oracles::ParamSampler rng(202);
    for (int i = 0; i < 500; ++i) {
        Preferences prefs{rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0), 1.0};
        ContractControls c;
        c.zX = rng.uniform(-3.0, 3.0);
        c.gammaX = rng.uniform(-3.0, 3.0);
        c.z1 = rng.uniform(-3.0, 3.0);
        c.gamma1 = rng.uniform(-3.0, 3.0);
        const double g = rng.uniform(-5.0, 5.0);
        Integrands integ = integrands_from_controls(c, prefs, g);
        RecoveredControls back = controls_from_integrands(c.zX, c.z1, integ, prefs);
        CHECK(back.gammaX == doctest::Approx(c.gammaX).epsilon(1e-14));
        CHECK(back.gamma1 == doctest::Approx(c.gamma1).epsilon(1e-14));
        CHECK(back.g_value == doctest::Approx(g).epsilon(1e-14));
    }
}

TEST_CASE("quadratic cost agrees with its defining sum at large magnitudes") {
    oracles::ParamSampler rng(303);
    QuadraticCost cost;
    cost.alpha = {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
    cost.beta = {rng.uniform(0.1, 4.0), rng.uniform(0.1, 4.0)};
    for (int i = 0; i < 100; ++i) {
        std::vector<double> v{rng.uniform(-1e10, 1e10), rng.uniform(-1e10, 1e10)};
        long double want = 0.0L;
        for (int j = 1; j >= 0; --j) {  // reversed accumulation order
            long double dv = static_cast<long double>(v[static_cast<std::size_t>(j)]) -
                             cost.alpha[static_cast<std::size_t>(j)];
            want += 0.5L * cost.beta[static_cast<std::size_t>(j)] * dv * dv;
        }
        CHECK(cost.k(v) == doctest::Approx(static_cast<double>(want)).epsilon(1e-14));
    }
    CHECK(cost.k(cost.alpha) == 0.0);
}

TEST_CASE("zero-cost mode zeroes k and the effective beta") {
    QuadraticCost cost;
    cost.zero_cost = true;
    cost.alpha = {1.0, 2.0};
    cost.beta = {3.0, 4.0};
    CHECK(cost.k({5.0, -7.0}) == 0.0);
    CHECK(cost.beta_eff(0) == 0.0);
    CHECK(cost.min_beta() == 0.0);
}

TEST_CASE("determinant on small matrices") {
    CHECK(determinant({1.0, 0.0, 0.0, 1.0}, 2) == doctest::Approx(1.0));
    CHECK(determinant({2.0, 1.0, 1.0, 2.0}, 2) == doctest::Approx(3.0));
    CHECK(determinant({1.0, 2.0, 2.0, 4.0}, 2) == doctest::Approx(0.0));
    CHECK(determinant({0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0}, 3) ==
          doctest::Approx(1.0));
}
