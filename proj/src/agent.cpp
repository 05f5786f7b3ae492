#include "volhaz/agent.hpp"

#include <cmath>
#include <stdexcept>

namespace volhaz {

namespace {
constexpr double kEqualityTol = 1e-10;  // |gammaX - beta_i| below this is equality
}

double g_value(const std::vector<double>& v, const ContractControls& controls,
               const MarketModel& market, const QuadraticCost& cost) {
    if (v.size() != static_cast<std::size_t>(market.d))
        throw std::invalid_argument("g_value: v must have length d");
    double bv = 0.0, norm2 = 0.0;
    for (int i = 0; i < market.d; ++i) {
        bv += market.b[i] * v[i];
        norm2 += v[i] * v[i];
    }
    double g = -cost.k(v) + controls.zX * bv + 0.5 * controls.gammaX * norm2;
    if (market.d0 == 1) g += controls.gamma1 * v[0];
    return g;
}

AgentResponse best_response(const ContractControls& controls,
                            const MarketModel& market, const QuadraticCost& cost,
                            const Preferences& /*preferences*/) {
    AgentResponse out;
    out.v_star.assign(static_cast<std::size_t>(market.d), 0.0);
    for (int i = 0; i < market.d; ++i) {
        const double beta_i = cost.beta_eff(static_cast<std::size_t>(i));
        const double num = controls.zX * market.b[i] +
                           cost.alpha_eff(static_cast<std::size_t>(i)) * beta_i +
                           ((market.d0 == 1 && i == 0) ? controls.gamma1 : 0.0);
        const double denom = beta_i - controls.gammaX;
        if (denom > kEqualityTol) {
            out.v_star[static_cast<std::size_t>(i)] = num / denom;
        } else if (denom >= -kEqualityTol && std::fabs(num) <= kEqualityTol) {
            // Flat direction: g does not depend on this coordinate.
            out.free_coords.push_back(i);
        } else {
            return AgentResponse{ResponseKind::Unbounded, {}, {}};
        }
    }
    out.kind = out.free_coords.empty() ? ResponseKind::Unique
                                       : ResponseKind::IndifferentCoordinates;
    return out;
}

std::optional<double> G_value(const ContractControls& controls,
                              const MarketModel& market,
                              const QuadraticCost& cost,
                              const Preferences& preferences) {
    AgentResponse response = best_response(controls, market, cost, preferences);
    if (response.kind == ResponseKind::Unbounded) return std::nullopt;
    double g0 = g_value(response.v_star, controls, market, cost);
    if (response.kind == ResponseKind::IndifferentCoordinates) {
        // Any value of a free coordinate must yield the same g.
        std::vector<double> probe = response.v_star;
        for (int i : response.free_coords) {
            for (double val : {1.0, -1.0}) {
                probe[static_cast<std::size_t>(i)] = val;
                double gi = g_value(probe, controls, market, cost);
                if (std::fabs(gi - g0) > 1e-9 * std::max(1.0, std::fabs(g0)))
                    throw std::logic_error(
                        "G_value: free coordinate is not a flat direction of g");
                probe[static_cast<std::size_t>(i)] = 0.0;
            }
        }
    }
    return g0;
}

}  // namespace volhaz
