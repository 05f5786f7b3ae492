#include "volhaz/principal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "volhaz/agent.hpp"
#include "volhaz/firstbest.hpp"

namespace volhaz {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMinBetaTol = 1e-12;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---- deterministic Nelder-Mead (maximization) + golden section ----------

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

struct NMResult {
    std::vector<double> x;
    double value = kNegInf;
};

NMResult nelder_mead_max(const ObjectiveFn& f, const std::vector<double>& start,
                         double step, double diameter_tol, int max_iterations) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> xs(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step;
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fs[i] = f(xs[i]);

    std::vector<std::size_t> order(n + 1);
    for (int it = 0; it < max_iterations; ++it) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] > fs[b]; });
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                diameter = std::max(diameter, std::fabs(xs[i][j] - xs[best][j]));
        if (diameter < diameter_tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += xs[i][j];
        }
        for (std::size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

        auto blend = [&](const std::vector<double>& a, const std::vector<double>& b,
                         double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = a[j] + t * (b[j] - a[j]);
            return p;
        };

        std::vector<double> xr = blend(centroid, xs[worst], -1.0);
        double fr = f(xr);
        if (fr > fs[best]) {
            std::vector<double> xe = blend(centroid, xs[worst], -2.0);
            double fe = f(xe);
            if (fe > fr) {
                xs[worst] = std::move(xe);
                fs[worst] = fe;
            } else {
                xs[worst] = std::move(xr);
                fs[worst] = fr;
            }
            continue;
        }
        if (fr > fs[second_worst]) {
            xs[worst] = std::move(xr);
            fs[worst] = fr;
            continue;
        }
        if (fr > fs[worst]) {
            std::vector<double> xoc = blend(centroid, xr, 0.5);
            double foc = f(xoc);
            if (foc >= fr) {
                xs[worst] = std::move(xoc);
                fs[worst] = foc;
                continue;
            }
        } else {
            std::vector<double> xic = blend(centroid, xs[worst], 0.5);
            double fic = f(xic);
            if (fic > fs[worst]) {
                xs[worst] = std::move(xic);
                fs[worst] = fic;
                continue;
            }
        }
        for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best vertex
            if (i == best) continue;
            xs[i] = blend(xs[best], xs[i], 0.5);
            fs[i] = f(xs[i]);
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fs[i] > fs[best]) best = i;
    return {xs[best], fs[best]};
}

double golden_max_1d(const std::function<double(double)>& f, double lo, double hi,
                     double tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Coordinate-wise golden polish around an NM optimum.
NMResult polish(const ObjectiveFn& f, NMResult r, double bracket, int sweeps) {
    const std::size_t n = r.x.size();
    for (int s = 0; s < sweeps; ++s) {
        for (std::size_t j = 0; j < n; ++j) {
            auto slice = [&](double t) {
                std::vector<double> y = r.x;
                y[j] = t;
                return f(y);
            };
            double t = golden_max_1d(slice, r.x[j] - bracket, r.x[j] + bracket, 1e-12);
            double ft = slice(t);
            if (ft > r.value) {
                r.x[j] = t;
                r.value = ft;
            }
        }
    }
    return r;
}

// Solve A x = rhs for a small dense system (partial-pivot Gauss).
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> rhs, int d) {
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int r = col + 1; r < d; ++r)
            if (std::fabs(a[static_cast<std::size_t>(r) * d + col]) >
                std::fabs(a[static_cast<std::size_t>(pivot) * d + col]))
                pivot = r;
        if (a[static_cast<std::size_t>(pivot) * d + col] == 0.0)
            throw std::runtime_error("solve_linear: singular matrix");
        if (pivot != col) {
            for (int j = 0; j < d; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * d + j],
                          a[static_cast<std::size_t>(col) * d + j]);
            std::swap(rhs[static_cast<std::size_t>(pivot)],
                      rhs[static_cast<std::size_t>(col)]);
        }
        double p = a[static_cast<std::size_t>(col) * d + col];
        for (int r = col + 1; r < d; ++r) {
            double fch = a[static_cast<std::size_t>(r) * d + col] / p;
            for (int j = col; j < d; ++j)
                a[static_cast<std::size_t>(r) * d + j] -=
                    fch * a[static_cast<std::size_t>(col) * d + j];
            rhs[static_cast<std::size_t>(r)] -= fch * rhs[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int r = d - 1; r >= 0; --r) {
        double s = rhs[static_cast<std::size_t>(r)];
        for (int j = r + 1; j < d; ++j)
            s -= a[static_cast<std::size_t>(r) * d + j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(r)] = s / a[static_cast<std::size_t>(r) * d + r];
    }
    return x;
}

std::vector<int> min_beta_set(const QuadraticCost& cost, int d) {
    const double betamin = cost.min_beta();
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
        if (std::fabs(cost.beta_eff(static_cast<std::size_t>(i)) - betamin) <= kMinBetaTol)
            idx.push_back(i);
    return idx;
}

}  // namespace

double principal_rate_given_v(const std::vector<double>& v, double zX, double z1,
                              const MarketModel& market, const QuadraticCost& cost,
                              const Preferences& preferences) {
    if (v.size() != static_cast<std::size_t>(market.d))
        throw std::invalid_argument("principal_rate_given_v: v must have length d");
    if (market.d0 == 0 && z1 != 0.0)
        throw std::invalid_argument("principal_rate_given_v: z1 requires d0 = 1");
    double norm2 = 0.0;
    for (double vi : v) norm2 += vi * vi;
    if (!std::isfinite(norm2) || norm2 > 1e150) return kNegInf;

    const double ra = preferences.R_A, rp = preferences.R_P;
    // agent exposure p = zX v + z1 e1, principal exposure q = (1 - zX) v - z1 e1
    double p2 = zX * zX * norm2 + 2.0 * zX * z1 * v[0] + z1 * z1;
    double q2 = (1.0 - zX) * (1.0 - zX) * norm2 - 2.0 * (1.0 - zX) * z1 * v[0] + z1 * z1;
    double rate = dot(market.b, v) - cost.k(v) - 0.5 * ra * p2 - 0.5 * rp * q2;
    return std::isfinite(rate) ? rate : kNegInf;
}

std::vector<double> resolve_for_principal(const AgentResponse& response,
                                          double zX, double z1,
                                          const MarketModel& market,
                                          const QuadraticCost& cost,
                                          const Preferences& preferences) {
    if (response.kind == ResponseKind::Unbounded)
        throw std::invalid_argument("resolve_for_principal: unbounded response");
    std::vector<double> v = response.v_star;
    const double ra = preferences.R_A, rp = preferences.R_P;
    const double q = ra * zX * zX + rp * (1.0 - zX) * (1.0 - zX);
    for (int i : response.free_coords) {
        const std::size_t ui = static_cast<std::size_t>(i);
        double linear = market.b[i] + cost.alpha_eff(ui) * cost.beta_eff(ui);
        if (market.d0 == 1 && i == 0) linear += z1 * (rp * (1.0 - zX) - ra * zX);
        v[ui] = linear / (q + cost.beta_eff(ui));
    }
    return v;
}

double objective_noncontractible(double zX, double gammaX,
                                 const MarketModel& market,
                                 const QuadraticCost& cost,
                                 const Preferences& preferences) {
    if (market.d0 != 0)
        throw std::invalid_argument("objective_noncontractible requires d0 = 0");
    ContractControls controls{0.0, zX, gammaX, 0.0, 0.0};
    AgentResponse response = best_response(controls, market, cost, preferences);
    if (response.kind == ResponseKind::Unbounded) return kNegInf;
    std::vector<double> v =
        resolve_for_principal(response, zX, 0.0, market, cost, preferences);
    return principal_rate_given_v(v, zX, 0.0, market, cost, preferences);
}

double objective_contractible(double zX, double z1, double gammaX, double gamma1,
                              const MarketModel& market, const QuadraticCost& cost,
                              const Preferences& preferences) {
    if (market.d0 != 1)
        throw std::invalid_argument("objective_contractible requires d0 = 1");
    ContractControls controls{0.0, zX, gammaX, z1, gamma1};
    AgentResponse response = best_response(controls, market, cost, preferences);
    if (response.kind == ResponseKind::Unbounded) return kNegInf;
    std::vector<double> v =
        resolve_for_principal(response, zX, z1, market, cost, preferences);
    return principal_rate_given_v(v, zX, z1, market, cost, preferences);
}

namespace {

double objective_for(const ContractControls& c, const MarketModel& market,
                     const QuadraticCost& cost, const Preferences& preferences) {
    return market.d0 == 0
               ? objective_noncontractible(c.zX, c.gammaX, market, cost, preferences)
               : objective_contractible(c.zX, c.z1, c.gammaX, c.gamma1, market, cost,
                                        preferences);
}

struct Candidate {
    ContractControls controls;
    double rate = kNegInf;
};

bool lex_less(const ContractControls& a, const ContractControls& b) {
    if (a.zX != b.zX) return a.zX < b.zX;
    if (a.gammaX != b.gammaX) return a.gammaX < b.gammaX;
    if (a.z1 != b.z1) return a.z1 < b.z1;
    return a.gamma1 < b.gamma1;
}

// Indifference-boundary branch, gammaX = min beta exactly. Coordinates on
// the min-beta set must have vanishing numerators; with d0 = 1 the first
// coordinate is steered through gamma1 and z1 is set by a joint 2x2 solve
// with v_1. Returns nothing when no zX makes the boundary admissible.
std::vector<Candidate> boundary_candidates(const MarketModel& market,
                                           const QuadraticCost& cost,
                                           const Preferences& preferences) {
    const double betamin = cost.min_beta();
    const std::vector<int> iset = min_beta_set(cost, market.d);
    const double ra = preferences.R_A, rp = preferences.R_P;

    bool pinned = false, feasible = true;
    double z_pin = 0.0;
    for (int i : iset) {
        if (market.d0 == 1 && i == 0) continue;  // freed through gamma1
        const std::size_t ui = static_cast<std::size_t>(i);
        const double ab = cost.alpha_eff(ui) * cost.beta_eff(ui);
        if (market.b[i] != 0.0) {
            const double zi = -ab / market.b[i];
            if (!pinned) {
                pinned = true;
                z_pin = zi;
            } else if (std::fabs(zi - z_pin) > 1e-9 * std::max(1.0, std::fabs(z_pin))) {
                feasible = false;
            }
        } else if (ab != 0.0) {
            feasible = false;
        }
    }
    if (!feasible) return {};

    auto make = [&](double z) -> Candidate {
        ContractControls c{0.0, z, betamin, 0.0, 0.0};
        if (market.d0 == 1) {
            // Joint quadratic maximum over (v_1, z1); gamma1 then implements v_1.
            const double q = ra * z * z + rp * (1.0 - z) * (1.0 - z);
            const double cross = rp * (1.0 - z) - ra * z;
            const double beta0 = cost.beta_eff(0);
            const double c1 = market.b[0] + cost.alpha_eff(0) * beta0;
            const double denom = (q + beta0) * (ra + rp) - cross * cross;
            const double v0 = c1 * (ra + rp) / denom;
            c.z1 = cross * v0 / (ra + rp);
            const bool first_on_min = std::fabs(beta0 - betamin) <= kMinBetaTol;
            c.gamma1 = first_on_min
                           ? -(z * market.b[0] + cost.alpha_eff(0) * beta0)
                           : v0 * (beta0 - betamin) - z * market.b[0] -
                                 cost.alpha_eff(0) * beta0;
        }
        return {c, objective_for(c, market, cost, preferences)};
    };

    if (pinned) return {make(z_pin)};

    // zX unconstrained on the boundary: coarse scan plus golden refinement.
    double best_z = 0.0, best_rate = kNegInf;
    for (int i = 0; i <= 200; ++i) {
        double z = -5.0 + 0.05 * i;
        double r = make(z).rate;
        if (r > best_rate) {
            best_rate = r;
            best_z = z;
        }
    }
    if (best_rate == kNegInf) return {};
    double z_ref = golden_max_1d([&](double z) { return make(z).rate; },
                                 best_z - 0.05, best_z + 0.05, 1e-12);
    Candidate cand = make(z_ref);
    if (cand.rate < best_rate) cand = make(best_z);
    return {cand};
}

}  // namespace

SecondBestSolution optimize(const MarketModel& market, const QuadraticCost& cost,
                            const Preferences& preferences, Restriction restriction,
                            const std::vector<ContractControls>& extra_starts) {
    ValidationReport report = validate(preferences, market, cost);
    if (!report.ok())
        throw std::invalid_argument("optimize: invalid parameters: " +
                                    report.violations.front());

    const double betamin = cost.min_beta();
    const bool contractible = market.d0 == 1;
    const bool full = restriction == Restriction::Full;
    // Search coordinates: Full (z, u[, z1, gamma1]) with gammaX = betamin - e^u;
    // GammaZero (z[, z1, gamma1]) with gammaX = -R_A z^2 (no d<X> dependence).
    const std::size_t dim = (full ? 2u : 1u) + (contractible ? 2u : 0u);

    auto to_controls = [&](const std::vector<double>& x) {
        ContractControls c;
        c.zX = x[0];
        c.gammaX = full ? betamin - std::exp(x[1])
                        : -preferences.R_A * x[0] * x[0];
        if (contractible) {
            c.z1 = x[full ? 2 : 1];
            c.gamma1 = x[full ? 3 : 2];
        }
        return c;
    };
    auto objective = [&](const std::vector<double>& x) {
        return objective_for(to_controls(x), market, cost, preferences);
    };

    std::vector<std::vector<double>> starts;
    const double z_lattice[] = {-1.0, 0.0, 0.5, 1.0};
    const double u_lattice[] = {-2.0, 0.0, 1.0, 2.0};
    for (double z : z_lattice) {
        if (full) {
            for (double u : u_lattice) {
                std::vector<double> x{z, u};
                if (contractible) {
                    x.push_back(0.0);
                    x.push_back(0.0);
                }
                starts.push_back(std::move(x));
            }
        } else {
            std::vector<double> x{z};
            if (contractible) {
                x.push_back(0.0);
                x.push_back(0.0);
            }
            starts.push_back(std::move(x));
        }
    }
    auto push_controls_start = [&](const ContractControls& c) {
        std::vector<double> x{c.zX};
        if (full) {
            if (!(c.gammaX < betamin - 1e-12)) return;
            x.push_back(std::log(betamin - c.gammaX));
        }
        if (contractible) {
            x.push_back(c.z1);
            x.push_back(c.gamma1);
        }
        starts.push_back(std::move(x));
    };
    for (const ContractControls& c : extra_starts) push_controls_start(c);
    if (contractible && full && !cost.zero_cost && market.d == 2 &&
        market.b[1] != 0.0 && cost.beta[1] <= cost.beta[0]) {
        try {
            push_controls_start(attain_first_best_contractible(market, cost, preferences));
        } catch (const std::exception&) {
            // construction infeasible for these parameters; lattice still runs
        }
    }

    SecondBestSolution sol;
    sol.diagnostics.starts_tried = static_cast<int>(starts.size());
    NMResult best;
    for (const std::vector<double>& start : starts) {
        NMResult r = nelder_mead_max(objective, start, 0.5, 1e-10, 10000);
        r = polish(objective, std::move(r), 0.25, 2);
        sol.diagnostics.best_by_start.push_back(r.value);
        if (r.value > best.value ||
            (r.value == best.value && !best.x.empty() &&
             lex_less(to_controls(r.x), to_controls(best.x)))) {
            best = std::move(r);
        }
    }

    Candidate chosen{to_controls(best.x), best.value};
    if (full) {
        for (const Candidate& bc : boundary_candidates(market, cost, preferences))
            if (bc.rate > chosen.rate) chosen = bc;
    } else if (cost.zero_cost) {
        // Isolated admissible point z = 0 (the search path has gammaX = -R_A z^2
        // hitting the zero-cost indifference boundary only there).
        Candidate origin{ContractControls{}, objective_for(ContractControls{}, market,
                                                           cost, preferences)};
        if (origin.rate > chosen.rate) chosen = origin;
    }
    if (chosen.rate == kNegInf)
        throw std::runtime_error("optimize: no admissible candidate found");

    sol.controls = chosen.controls;
    sol.rate = chosen.rate;
    sol.boundary = std::fabs(chosen.controls.gammaX - betamin) <= kMinBetaTol;
    AgentResponse response = best_response(chosen.controls, market, cost, preferences);
    sol.v_star = resolve_for_principal(response, chosen.controls.zX, chosen.controls.z1,
                                       market, cost, preferences);

    double gn2 = 0.0;
    const double h = 1e-6;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> xp = best.x, xm = best.x;
        xp[j] += h;
        xm[j] -= h;
        double gj = (objective(xp) - objective(xm)) / (2.0 * h);
        gn2 += gj * gj;
    }
    sol.diagnostics.gradient_norm = std::sqrt(gn2);
    return sol;
}

ContractControls attain_first_best_contractible(const MarketModel& market,
                                                const QuadraticCost& cost,
                                                const Preferences& preferences) {
    if (market.d != 2 || market.d0 != 1)
        throw std::invalid_argument(
            "attain_first_best_contractible requires d = 2 and d0 = 1");
    if (cost.zero_cost)
        throw std::invalid_argument(
            "attain_first_best_contractible: use attain_first_best_zero_cost");
    if (market.b[1] == 0.0)
        throw std::invalid_argument("attain_first_best_contractible requires b_2 != 0");
    if (cost.beta[1] > cost.beta[0])
        throw std::invalid_argument(
            "attain_first_best_contractible requires beta_2 <= beta_1");

    const FirstBestSolution fb = first_best_volatility(market, cost, preferences);
    const double z = preferences.risk_sharing_slope();
    const double num2 = z * market.b[1] + cost.alpha[1] * cost.beta[1];
    if (fb.v_fb[1] == 0.0 || num2 / fb.v_fb[1] <= 0.0)
        throw std::domain_error(
            "attain_first_best_contractible: no admissible gammaX steers v_2 to its "
            "first-best value for these parameters");
    ContractControls c;
    c.zX = z;
    c.gammaX = cost.beta[1] - num2 / fb.v_fb[1];  // < beta_2 = min beta
    c.z1 = 0.0;
    c.gamma1 = fb.v_fb[0] * (cost.beta[0] - c.gammaX) - z * market.b[0] -
               cost.alpha[0] * cost.beta[0];
    return c;
}

ContractControls attain_first_best_zero_cost(const MarketModel& market,
                                             const Preferences& preferences) {
    const double rsum = preferences.R_A + preferences.R_P;
    ContractControls c;
    c.zX = preferences.R_P / rsum;
    c.gammaX = -preferences.R_A * preferences.R_P * preferences.R_P / (rsum * rsum);
    c.z1 = 0.0;
    c.gamma1 = 0.0;
    if (market.sigma_is_identity()) {
        // Induced volatility must be b / Rbar; cheap self-check of the closed form.
        const double scale = rsum / (preferences.R_A * preferences.R_P);
        std::vector<double> induced = zero_cost_induced_volatility(c, market);
        for (int i = 0; i < market.d; ++i)
            if (std::fabs(induced[static_cast<std::size_t>(i)] - scale * market.b[i]) >
                1e-9 * std::max(1.0, std::fabs(scale * market.b[i])))
                throw std::logic_error(
                    "attain_first_best_zero_cost: induced volatility mismatch");
    }
    return c;
}

std::vector<double> zero_cost_induced_volatility(const ContractControls& controls,
                                                 const MarketModel& market) {
    if (!(controls.gammaX < 0.0))
        throw std::invalid_argument(
            "zero_cost_induced_volatility requires gammaX < 0");
    const int d = market.d;
    std::vector<double> ssT(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += market.sigma_at(i, k) * market.sigma_at(j, k);
            ssT[static_cast<std::size_t>(i) * d + j] = s;
        }
    std::vector<double> rhs(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        double sb = 0.0;
        for (int j = 0; j < d; ++j) sb += market.sigma_at(i, j) * market.b[j];
        rhs[static_cast<std::size_t>(i)] =
            controls.zX * sb + controls.gamma1 * market.sigma_at(i, 0);
    }
    std::vector<double> v = solve_linear(std::move(ssT), std::move(rhs), d);
    for (double& vi : v) vi /= -controls.gammaX;
    return v;
}

ExistenceReport check_existence(const MarketModel& market, const QuadraticCost& cost,
                                const Preferences& preferences) {
    if (market.d0 != 0)
        throw std::invalid_argument("check_existence applies to d0 = 0");
    ExistenceReport rep;
    rep.lhs = rep.rhs = rep.eta = std::numeric_limits<double>::quiet_NaN();

    const double betamin = cost.min_beta();
    const std::vector<int> iset = min_beta_set(cost, market.d);
    for (int i : iset) {
        if (market.b[i] == 0.0) {
            rep.kind = ExistenceCase::NotApplicable;
            rep.note = "b_j = 0 on the minimal-beta set; the proposition assumes "
                       "b_j != 0 there";
            return rep;
        }
    }

    std::vector<double> ratios;
    for (int i : iset) {
        const std::size_t ui = static_cast<std::size_t>(i);
        ratios.push_back(cost.alpha_eff(ui) * cost.beta_eff(ui) / market.b[i]);
    }
    bool homogeneous = true;
    for (double r : ratios)
        if (std::fabs(r - ratios.front()) > 1e-10 * std::max(1.0, std::fabs(ratios.front())))
            homogeneous = false;
    if (!homogeneous) {
        rep.kind = ExistenceCase::CardGreaterOne_Heterogeneous;
        rep.note = "ratios alpha_j beta_j / b_j differ on the minimal-beta set";
        return rep;
    }

    const double eta = ratios.front();
    const double ra = preferences.R_A, rp = preferences.R_P;
    // Boundary supremum at (zX, gammaX) = (-eta, min beta): free coordinates on
    // the min-beta set carry the quadratic coefficient R_A eta^2 + R_P (1+eta)^2
    // + beta (the exposure slope at the boundary is 1 - zX = 1 + eta).
    const double qb = ra * eta * eta + rp * (1.0 + eta) * (1.0 + eta);
    double lhs = 0.0;
    std::vector<bool> in_i(static_cast<std::size_t>(market.d), false);
    for (int i : iset) in_i[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < market.d; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        if (in_i[ui]) {
            lhs += (1.0 + eta) * (1.0 + eta) * market.b[i] * market.b[i] /
                   (2.0 * (qb + betamin));
        } else {
            const double ab = cost.alpha_eff(ui) * cost.beta_eff(ui);
            const double w = (-eta * market.b[i] + ab) / (cost.beta_eff(ui) - betamin);
            lhs += (market.b[i] + ab) * w - 0.5 * w * w * (qb + cost.beta_eff(ui));
        }
    }
    double rhs = 0.0;
    for (int i = 0; i < market.d; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        const double num = market.b[i] + cost.alpha_eff(ui) * cost.beta_eff(ui);
        rhs += num * num / (2.0 * (cost.beta_eff(ui) + ra));
    }
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.eta = eta;
    rep.kind = lhs <= rhs + 1e-12 ? ExistenceCase::Homogeneous_InequalityHolds
                                  : ExistenceCase::Homogeneous_InequalityFails;
    return rep;
}

}  // namespace volhaz
