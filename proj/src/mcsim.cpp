#include "volhaz/mcsim.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>
#include <stdexcept>

#include "volhaz/agent.hpp"
#include "volhaz/philox.hpp"
#include "volhaz/principal.hpp"

namespace volhaz {

namespace {

double pairwise_sum_range(const double* data, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_range(data, half) + pairwise_sum_range(data + half, n - half);
}

std::vector<double> agent_utilities(const PathEnsemble& ensemble, double r_a) {
    std::vector<double> u(ensemble.paths.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = -std::exp(-r_a * (ensemble.paths[i].xi_T - ensemble.paths[i].k_T));
    return u;
}

}  // namespace

double pairwise_sum(const std::vector<double>& values) {
    return pairwise_sum_range(values.data(), values.size());
}

MeanStderr mean_stderr(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean_stderr: empty sample");
    const std::size_t n = values.size();
    MeanStderr out;
    out.mean = pairwise_sum(values) / static_cast<double>(n);
    if (n == 1) return out;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    out.se = std::sqrt(var / static_cast<double>(n));
    return out;
}

PathEnsemble simulate(const SimulationConfig& config, const MarketModel& market,
                      const std::vector<double>& strategy,
                      const ContractControls& controls, const QuadraticCost& cost,
                      const Preferences& preferences) {
    if (strategy.size() != static_cast<std::size_t>(market.d))
        throw std::invalid_argument("simulate: strategy must have length d");
    if (!market.sigma_is_identity())
        throw std::invalid_argument("simulate supports sigma = identity only");
    if (config.T <= 0.0 || config.n_steps < 1 || config.n_paths < 1)
        throw std::invalid_argument("simulate: T, n_steps, n_paths must be positive");
    if (config.T / config.n_steps > 0.1)
        std::cerr << "simulate: warning: step size T/n_steps = "
                  << config.T / config.n_steps << " exceeds 0.1\n";

    auto g_opt = G_value(controls, market, cost, preferences);
    if (!g_opt)
        throw std::invalid_argument(
            "simulate: contract not admissible (unbounded agent response)");
    const Integrands integ = integrands_from_controls(controls, preferences, *g_opt);

    const int d = market.d;
    const double dt = config.T / config.n_steps;
    const double sqrt_dt = std::sqrt(dt);
    const double k_rate = cost.k(strategy);
    double norm2 = 0.0, drift = 0.0;
    for (int i = 0; i < d; ++i) {
        norm2 += strategy[static_cast<std::size_t>(i)] * strategy[static_cast<std::size_t>(i)];
        drift += strategy[static_cast<std::size_t>(i)] * market.b[i];
    }

    PathEnsemble ensemble;
    ensemble.d0 = market.d0;
    ensemble.T = config.T;
    ensemble.paths.resize(static_cast<std::size_t>(config.n_paths));

    const std::uint64_t blocks_per_step = static_cast<std::uint64_t>((d + 1) / 2);
    for (int p = 0; p < config.n_paths; ++p) {
        const std::uint64_t stream =
            config.antithetic ? static_cast<std::uint64_t>(p / 2)
                              : static_cast<std::uint64_t>(p);
        const double sign = (config.antithetic && (p % 2 == 1)) ? -1.0 : 1.0;

        double x = 0.0, qv = 0.0, xi = 0.0, b1 = 0.0;
        std::vector<double> db(static_cast<std::size_t>(d));
        for (int s = 0; s < config.n_steps; ++s) {
            for (std::uint64_t blk = 0; blk < blocks_per_step; ++blk) {
                const NormalPair z =
                    philox_normal_pair(config.seed, stream,
                                       static_cast<std::uint64_t>(s) * blocks_per_step + blk);
                const std::size_t i0 = static_cast<std::size_t>(2 * blk);
                db[i0] = sign * sqrt_dt * z.z0;
                if (i0 + 1 < static_cast<std::size_t>(d)) db[i0 + 1] = sign * sqrt_dt * z.z1;
            }
            double dx = drift * dt;
            for (int i = 0; i < d; ++i)
                dx += strategy[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(i)];
            const double qv_inc =
                config.qv_mode == QvMode::Analytic ? norm2 * dt : dx * dx;
            xi += controls.zX * dx + integ.yX * qv_inc + integ.h * dt;
            if (market.d0 == 1)
                xi += controls.z1 * db[0] + integ.y1 * strategy[0] * dt;
            x += dx;
            qv += qv_inc;
            if (market.d0 == 1) b1 += db[0];
        }
        PathResult& r = ensemble.paths[static_cast<std::size_t>(p)];
        r.x_T = x;
        r.qv = qv;
        r.xi_T = controls.cash + xi;
        r.k_T = k_rate * config.T;
        r.b1_T = market.d0 == 1 ? b1 : 0.0;
    }
    return ensemble;
}

MeanStderr agent_utility(const PathEnsemble& ensemble, const Preferences& preferences) {
    return mean_stderr(agent_utilities(ensemble, preferences.R_A));
}

MeanStderr principal_utility(const PathEnsemble& ensemble,
                             const Preferences& preferences) {
    std::vector<double> u(ensemble.paths.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = -std::exp(-preferences.R_P *
                         (ensemble.paths[i].x_T - ensemble.paths[i].xi_T));
    return mean_stderr(u);
}

std::vector<IcProbeRow> ic_probe(const SimulationConfig& config,
                                 const MarketModel& market,
                                 const ContractControls& controls,
                                 const QuadraticCost& cost,
                                 const Preferences& preferences,
                                 const std::vector<std::vector<double>>& deviations) {
    AgentResponse response = best_response(controls, market, cost, preferences);
    if (response.kind == ResponseKind::Unbounded)
        throw std::invalid_argument("ic_probe: contract not admissible");
    std::vector<double> v_star = resolve_for_principal(
        response, controls.zX, controls.z1, market, cost, preferences);

    std::vector<std::vector<double>> strategies;
    strategies.push_back(v_star);
    strategies.insert(strategies.end(), deviations.begin(), deviations.end());

    std::vector<IcProbeRow> rows;
    std::vector<double> base_utilities;
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        // Same seed for every strategy: common random numbers.
        PathEnsemble ens =
            simulate(config, market, strategies[s], controls, cost, preferences);
        std::vector<double> u = agent_utilities(ens, preferences.R_A);
        IcProbeRow row;
        row.strategy = strategies[s];
        row.utility = mean_stderr(u);
        if (s == 0) {
            base_utilities = std::move(u);
            row.diff = MeanStderr{};
        } else {
            std::vector<double> diff(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - base_utilities[i];
            row.diff = mean_stderr(diff);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_ensemble_csv(std::ostream& os, const PathEnsemble& ensemble) {
    os << "path_id,x_T,qv,xi_T,k_T,b1_T\n";
    char buf[512];
    for (std::size_t i = 0; i < ensemble.paths.size(); ++i) {
        const PathResult& r = ensemble.paths[i];
        if (ensemble.d0 == 1) {
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", i,
                          r.x_T, r.qv, r.xi_T, r.k_T, r.b1_T);
        } else {
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,\n", i, r.x_T,
                          r.qv, r.xi_T, r.k_T);
        }
        os << buf;
    }
}

}  // namespace volhaz
