#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "volhaz/model.hpp"

// Euler-Maruyama simulation of the controlled output process together with
// the path-dependent contract payoff, CARA utility estimators, and an
// incentive-compatibility probe under common random numbers.

namespace volhaz {

enum class QvMode {
    Analytic,           // accumulate |v|^2 dt (the contract's true integrand)
    SquaredIncrements,  // realized-variance cross-check, sum of (dX)^2
};

struct SimulationConfig {
    double T = 1.0;
    int n_steps = 200;
    int n_paths = 10000;
    std::uint64_t seed = 12345;
    bool antithetic = false;
    QvMode qv_mode = QvMode::Analytic;
};

struct PathResult {
    double x_T = 0.0;   // terminal output
    double qv = 0.0;    // accumulated quadratic variation
    double xi_T = 0.0;  // contract payoff
    double k_T = 0.0;   // accumulated effort cost
    double b1_T = 0.0;  // terminal contractible factor (d0 = 1 only)
};

struct PathEnsemble {
    std::vector<PathResult> paths;
    int d0 = 0;
    double T = 1.0;
};

struct MeanStderr {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
};

// Simulate n_paths of X under the constant strategy v and accumulate the
// contract payoff. Throws when the contract admits an unbounded agent
// response (no finite Hamiltonian value) or when sigma is not the identity.
PathEnsemble simulate(const SimulationConfig& config, const MarketModel& market,
                      const std::vector<double>& strategy,
                      const ContractControls& controls, const QuadraticCost& cost,
                      const Preferences& preferences);

// Sample mean / standard error of U_A(xi_T - K_T) = -exp(-R_A (xi_T - K_T)).
MeanStderr agent_utility(const PathEnsemble& ensemble, const Preferences& preferences);

// Sample mean / standard error of U_P(X_T - xi_T) = -exp(-R_P (X_T - xi_T)).
MeanStderr principal_utility(const PathEnsemble& ensemble,
                             const Preferences& preferences);

struct IcProbeRow {
    std::vector<double> strategy;
    MeanStderr utility;
    MeanStderr diff;  // paired difference of agent utility vs the v* row
};

// Evaluate the agent's utility at the resolved best response v* (first row)
// and at each given strategy under common random numbers. diff is the
// per-path paired difference against the v* row.
std::vector<IcProbeRow> ic_probe(const SimulationConfig& config,
                                 const MarketModel& market,
                                 const ContractControls& controls,
                                 const QuadraticCost& cost,
                                 const Preferences& preferences,
                                 const std::vector<std::vector<double>>& deviations);

// CSV with columns path_id,x_T,qv,xi_T,k_T,b1_T (b1_T empty when d0 = 0),
// 17-significant-digit floats, LF line endings.
void write_ensemble_csv(std::ostream& os, const PathEnsemble& ensemble);

// Deterministic pairwise summation (order-independent reductions).
double pairwise_sum(const std::vector<double>& values);
MeanStderr mean_stderr(const std::vector<double>& values);

}  // namespace volhaz
