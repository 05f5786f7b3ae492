#pragma once

#include <iosfwd>
#include <string>

#include "volhaz/mcsim.hpp"
#include "volhaz/model.hpp"

// Flat key/value config files:
//
//   # comment
//   R_A = 1.0
//   d = 2
//   b = 1.8, 1.8
//
// Scalar keys: R_A, R_P, rho, T (floats); d, d0, n_steps, n_paths, seed,
// zero_cost (integers). Array keys: b, alpha, beta, sigma (row-major).
// Unknown keys are an error. Contract files use keys cash, zX, gammaX,
// z1, gamma1.

namespace volhaz {

struct ProblemConfig {
    Preferences preferences;
    MarketModel market;
    QuadraticCost cost;
    SimulationConfig sim;
};

ProblemConfig parse_config(std::istream& is);
ProblemConfig load_config(const std::string& path);

ContractControls parse_contract(std::istream& is);
ContractControls load_contract(const std::string& path);

}  // namespace volhaz
