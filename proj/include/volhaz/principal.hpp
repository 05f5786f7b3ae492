#pragma once

#include <string>
#include <vector>

#include "volhaz/model.hpp"

// Reduced principal objectives, the deterministic multi-start optimizer over
// contract controls, explicit first-best attainability constructions, and the
// existence-condition report for the non-contractible case.

namespace volhaz {

enum class Restriction {
    Full,       // optimize all available contract sensitivities
    GammaZero,  // no quadratic-variation dependence: yX = 0, i.e. gammaX = -R_A zX^2
};

struct OptimizerDiagnostics {
    int starts_tried = 0;
    std::vector<double> best_by_start;  // polished objective per start, start order fixed
    double gradient_norm = 0.0;  // finite-difference norm at the interior optimum
};

struct SecondBestSolution {
    ContractControls controls;
    std::vector<double> v_star;  // agent response, ties resolved in the principal's favor
    double rate = 0.0;           // per-unit-time principal objective value
    bool boundary = false;       // solution sits on the indifference boundary gammaX = min beta
    OptimizerDiagnostics diagnostics;
};

enum class ExistenceCase {
    CardGreaterOne_Heterogeneous,
    Homogeneous_InequalityHolds,
    Homogeneous_InequalityFails,
    NotApplicable,
};

// Sufficient-condition check for an interior maximizer of the
// non-contractible problem. lhs is the supremum the objective can reach on
// the indifference boundary, rhs the value attained at (Z, Gamma) = (1, -R_A);
// both are expressed with the cost constant sum_i beta_i alpha_i^2 / 2 added
// back, matching the closed-form comparison they come from.
struct ExistenceReport {
    ExistenceCase kind = ExistenceCase::NotApplicable;
    double lhs = 0.0;
    double rhs = 0.0;
    double eta = 0.0;  // common ratio alpha_j beta_j / b_j on the min-beta set
    std::string note;
};

// Principal rate for a resolved strategy v and exposures (zX, z1):
//   b.v - k(v) - R_A |zX v + z1 e1|^2 / 2 - R_P |(1-zX) v - z1 e1|^2 / 2.
// z1 must be 0 when d0 = 0.
double principal_rate_given_v(const std::vector<double>& v, double zX, double z1,
                              const MarketModel& market, const QuadraticCost& cost,
                              const Preferences& preferences);

// Fill the free coordinates of an agent response with the principal's
// maximizers of the rate (closed-form quadratic per coordinate).
std::vector<double> resolve_for_principal(const AgentResponse& response,
                                          double zX, double z1,
                                          const MarketModel& market,
                                          const QuadraticCost& cost,
                                          const Preferences& preferences);

// Reduced objective over (zX, gammaX) when only the output is contractible.
// Unbounded agent responses map to -infinity.
double objective_noncontractible(double zX, double gammaX,
                                 const MarketModel& market,
                                 const QuadraticCost& cost,
                                 const Preferences& preferences);

// Reduced objective over (zX, z1, gammaX, gamma1) with one contractible
// factor (d0 = 1, sigma = identity).
double objective_contractible(double zX, double z1, double gammaX, double gamma1,
                              const MarketModel& market, const QuadraticCost& cost,
                              const Preferences& preferences);

// Deterministic multi-start simplex search in transformed coordinates
// (gammaX = min beta - exp(u) keeps iterates strictly inside the admissible
// region), followed by coordinate-wise golden-section polish and a
// closed-form evaluation of the indifference-boundary branch. extra_starts
// seed additional simplex runs (used by sweeps to chain neighbouring
// solutions); they never replace the fixed start lattice.
SecondBestSolution optimize(const MarketModel& market, const QuadraticCost& cost,
                            const Preferences& preferences, Restriction restriction,
                            const std::vector<ContractControls>& extra_starts = {});

// Contract implementing the first-best volatility when the extra factor B1
// is contractible: zX is the optimal risk-sharing slope, gammaX steers v_2
// through the output quadratic variation and gamma1 steers v_1 through the
// cross-variation. Requires d = 2, d0 = 1, b_2 != 0, beta_2 <= beta_1, and
// throws std::domain_error when no admissible gammaX can reach v_2^FB.
ContractControls attain_first_best_contractible(const MarketModel& market,
                                                const QuadraticCost& cost,
                                                const Preferences& preferences);

// Zero-cost contract attaining first best:
//   zX = R_P / (R_A + R_P), gammaX = -R_A R_P^2 / (R_A + R_P)^2,
// z1 = gamma1 = 0. Valid for any invertible sigma.
ContractControls attain_first_best_zero_cost(const MarketModel& market,
                                             const Preferences& preferences);

// Agent volatility induced by a zero-cost contract with gammaX < 0:
//   v* = -(1 / gammaX) (sigma sigma^T)^{-1} (zX sigma b + gamma1 sigma_.1).
std::vector<double> zero_cost_induced_volatility(const ContractControls& controls,
                                                 const MarketModel& market);

// Classify the existence conditions for the non-contractible problem
// (d0 = 0). Reports NotApplicable when some b_j vanishes on the min-beta set.
ExistenceReport check_existence(const MarketModel& market, const QuadraticCost& cost,
                                const Preferences& preferences);

}  // namespace volhaz
