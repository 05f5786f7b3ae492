#include "volhaz/firstbest.hpp"

#include <cmath>
#include <stdexcept>

namespace volhaz {

double f_rate(const std::vector<double>& v, const MarketModel& market,
              const QuadraticCost& cost, const Preferences& preferences) {
    if (v.size() != static_cast<std::size_t>(market.d))
        throw std::invalid_argument("f_rate: v must have length d");
    double bv = 0.0, norm2 = 0.0;
    for (int i = 0; i < market.d; ++i) {
        bv += market.b[i] * v[i];
        norm2 += v[i] * v[i];
    }
    return bv - cost.k(v) - 0.5 * preferences.aggregate_risk_aversion() * norm2;
}

FirstBestSolution first_best_volatility(const MarketModel& market,
                                        const QuadraticCost& cost,
                                        const Preferences& preferences) {
    const double rbar = preferences.aggregate_risk_aversion();
    FirstBestSolution sol;
    sol.v_fb.resize(static_cast<std::size_t>(market.d));
    for (int i = 0; i < market.d; ++i) {
        const double beta_i = cost.beta_eff(static_cast<std::size_t>(i));
        const double alpha_i = cost.alpha_eff(static_cast<std::size_t>(i));
        sol.v_fb[static_cast<std::size_t>(i)] =
            (market.b[i] + beta_i * alpha_i) / (beta_i + rbar);
    }
    sol.f_rate = f_rate(sol.v_fb, market, cost, preferences);
    const double rsum = preferences.R_A + preferences.R_P;
    sol.contract_slope = preferences.R_P / rsum;
    sol.contract_cost_coeff = preferences.R_A / rsum;
    sol.contract_cash =
        std::log(preferences.rho * preferences.R_A / preferences.R_P) / rsum;
    return sol;
}

double first_best_certainty_equivalent_rate(const MarketModel& market,
                                            const QuadraticCost& cost,
                                            const Preferences& preferences) {
    return first_best_volatility(market, cost, preferences).f_rate;
}

}  // namespace volhaz
