#pragma once

#include <vector>

#include "volhaz/model.hpp"

namespace volhaz {

// Benchmark with no moral hazard: the principal dictates v directly and the
// surplus per unit time is f(v) = b.v - k(v) - Rbar |v|^2 / 2, with
// Rbar = R_A R_P / (R_A + R_P).

struct FirstBestSolution {
    std::vector<double> v_fb;   // pointwise maximizer of f
    double f_rate = 0.0;        // f(v_fb), per-unit-time certainty-equivalent rate
    double contract_slope = 0.0;      // coefficient on X_T: R_P / (R_A + R_P)
    double contract_cost_coeff = 0.0; // coefficient on K_T: R_A / (R_A + R_P)
    double contract_cash = 0.0;       // log(rho R_A / R_P) / (R_A + R_P)
};

double f_rate(const std::vector<double>& v, const MarketModel& market,
              const QuadraticCost& cost, const Preferences& preferences);

// v_fb_i = (b_i + beta_i alpha_i) / (beta_i + Rbar); reduces to b_i / Rbar
// in zero-cost mode.
FirstBestSolution first_best_volatility(const MarketModel& market,
                                        const QuadraticCost& cost,
                                        const Preferences& preferences);

double first_best_certainty_equivalent_rate(const MarketModel& market,
                                            const QuadraticCost& cost,
                                            const Preferences& preferences);

}  // namespace volhaz
