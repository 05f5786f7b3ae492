#pragma once

#include <optional>
#include <vector>

#include "volhaz/model.hpp"

// Agent side of the contracting problem: the pointwise Hamiltonian g, its
// supremum G, and the closed-form best response to a contract. All
// functions assume sigma = identity (the volatility map enters the library
// only through the zero-cost attainability construction).

namespace volhaz {

// g(v) = -k(v) + zX (b . v) + gammaX |v|^2 / 2 + 1_{d0=1} gamma1 v_1.
double g_value(const std::vector<double>& v, const ContractControls& controls,
               const MarketModel& market, const QuadraticCost& cost);

// Closed-form maximizer of g. With gammaX strictly below every beta_i the
// maximizer is unique:
//   v_i = (zX b_i + alpha_i beta_i + 1_{i=1, d0=1} gamma1) / (beta_i - gammaX).
// Equality gammaX = beta_i (detected with absolute tolerance 1e-10) makes
// coordinate i flat if its numerator vanishes, Unbounded otherwise; gammaX
// above any beta_i is Unbounded.
AgentResponse best_response(const ContractControls& controls,
                            const MarketModel& market, const QuadraticCost& cost,
                            const Preferences& preferences);

// sup_v g(v); nullopt when the response is Unbounded. For indifferent
// responses the free coordinates are flat directions of g; this is asserted
// by evaluation and the flat value returned.
std::optional<double> G_value(const ContractControls& controls,
                              const MarketModel& market,
                              const QuadraticCost& cost,
                              const Preferences& preferences);

}  // namespace volhaz
