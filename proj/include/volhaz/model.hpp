#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Domain types for the CARA principal-agent model with volatility choice,
// plus the algebraic mappings between the (Z, Gamma, G) contract
// representation and the (Z, Y, H) integrand representation.

namespace volhaz {

struct Preferences {
    double R_A = 1.0;  // agent absolute risk aversion, > 0
    double R_P = 1.0;  // principal absolute risk aversion, > 0
    double rho = 1.0;  // first-best bargaining weight, > 0

    // Harmonic-mean style aggregate: R_A R_P / (R_A + R_P).
    double aggregate_risk_aversion() const { return R_A * R_P / (R_A + R_P); }

    // Optimal static risk share kept by the agent, R_P / (R_A + R_P).
    double risk_sharing_slope() const { return R_P / (R_A + R_P); }
};

struct MarketModel {
    int d = 2;               // number of Brownian risk sources, >= 2
    std::vector<double> b;   // risk premia per unit time, length d
    std::vector<double> sigma;  // d x d volatility map, row-major; empty = identity
    int d0 = 0;              // number of exogenous contractible risk factors, 0 or 1

    bool sigma_is_identity(double tol = 1e-14) const;
    // Entry sigma[i][j]; the empty-sigma case reads as the identity.
    double sigma_at(int i, int j) const;
};

// Quadratic effort cost k(v) = 1/2 sum_i beta_i (v_i - alpha_i)^2.
// The zero_cost flag switches k to 0 identically (and the best-response
// formulas to their beta = 0 limits); beta entries are ignored in that mode.
struct QuadraticCost {
    std::vector<double> alpha;  // initial risk exposures, length d
    std::vector<double> beta;   // cost intensities, each > 0, length d
    bool zero_cost = false;

    double k(const std::vector<double>& v) const;
    // beta_i as used by the closed forms: 0 in zero-cost mode.
    double beta_eff(std::size_t i) const { return zero_cost ? 0.0 : beta[i]; }
    double alpha_eff(std::size_t i) const { return zero_cost ? 0.0 : alpha[i]; }
    double min_beta() const;
};

// Constant contract sensitivities. The payoff is
//   xi_T = cash + int [ zX dX + yX d<X> + 1_{d0=1}(z1 dB1 + y1 d<X,B1>) + h dt ]
// with (yX, y1, h) derived from (zX, gammaX, z1, gamma1) and the agent
// Hamiltonian value G; see integrands_from_controls.
struct ContractControls {
    double cash = 0.0;
    double zX = 0.0;      // sensitivity to dX
    double gammaX = 0.0;  // second-order sensitivity, output diagonal
    double z1 = 0.0;      // sensitivity to dB1, only meaningful when d0 = 1
    double gamma1 = 0.0;  // cross sensitivity to d<X,B1>, only when d0 = 1
};

struct Integrands {
    double yX = 0.0;
    double y1 = 0.0;
    double h = 0.0;
};

enum class ResponseKind { Unique, IndifferentCoordinates, Unbounded };

// Agent best response to a contract. For IndifferentCoordinates the entries
// of v_star at free_coords are placeholders (0.0); the principal-side
// resolution fills them in.
struct AgentResponse {
    ResponseKind kind = ResponseKind::Unique;
    std::vector<double> v_star;
    std::vector<int> free_coords;  // nonempty iff kind == IndifferentCoordinates
};

// List of violated invariants; empty means the parameter set is valid.
struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Preferences& preferences,
                          const MarketModel& market,
                          const QuadraticCost& cost);

// (Z, Gamma, G) -> (Y, H) integrand mapping:
//   yX = (gammaX + R_A zX^2) / 2
//   y1 = gamma1 + R_A zX z1
//   h  = -G + R_A z1^2 / 2
Integrands integrands_from_controls(const ContractControls& controls,
                                    const Preferences& preferences,
                                    double g_value);

// Inverse mapping; recovers (gammaX, gamma1) and the G value from the
// integrands given (zX, z1, R_A). Exact (bijective for fixed R_A).
struct RecoveredControls {
    double gammaX = 0.0;
    double gamma1 = 0.0;
    double g_value = 0.0;
};
RecoveredControls controls_from_integrands(double zX, double z1,
                                           const Integrands& integrands,
                                           const Preferences& preferences);

// Determinant of the d x d matrix stored row-major (partial-pivot LU).
double determinant(const std::vector<double>& m, int d);

}  // namespace volhaz
