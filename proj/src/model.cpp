#include "volhaz/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace volhaz {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

bool MarketModel::sigma_is_identity(double tol) const {
    if (sigma.empty()) return true;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double want = (i == j) ? 1.0 : 0.0;
            if (std::fabs(sigma[static_cast<std::size_t>(i) * d + j] - want) > tol)
                return false;
        }
    return true;
}

double MarketModel::sigma_at(int i, int j) const {
    if (sigma.empty()) return (i == j) ? 1.0 : 0.0;
    return sigma[static_cast<std::size_t>(i) * d + j];
}

double QuadraticCost::k(const std::vector<double>& v) const {
    if (zero_cost) return 0.0;
    if (v.size() != beta.size())
        throw std::invalid_argument("k(v): dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double dvi = v[i] - alpha[i];
        s += 0.5 * beta[i] * dvi * dvi;
    }
    return s;
}

double QuadraticCost::min_beta() const {
    if (zero_cost) return 0.0;
    double m = std::numeric_limits<double>::infinity();
    for (double bi : beta) m = std::min(m, bi);
    return m;
}

ValidationReport validate(const Preferences& preferences,
                          const MarketModel& market,
                          const QuadraticCost& cost) {
    ValidationReport report;
    auto bad = [&](const std::string& msg) { report.violations.push_back(msg); };

    if (!(std::isfinite(preferences.R_A) && preferences.R_A > 0.0))
        bad("R_A must be finite and strictly positive");
    if (!(std::isfinite(preferences.R_P) && preferences.R_P > 0.0))
        bad("R_P must be finite and strictly positive");
    if (!(std::isfinite(preferences.rho) && preferences.rho > 0.0))
        bad("rho must be finite and strictly positive");

    if (market.d < 2) bad("d must be at least 2");
    if (market.d0 != 0 && market.d0 != 1) bad("d0 must be 0 or 1");
    if (market.d0 == 1 && market.d < 2) bad("d0 = 1 requires d >= 2");
    if (market.b.size() != static_cast<std::size_t>(market.d))
        bad("b must have length d");
    else if (!all_finite(market.b))
        bad("b entries must be finite");

    if (!market.sigma.empty()) {
        if (market.sigma.size() !=
            static_cast<std::size_t>(market.d) * static_cast<std::size_t>(market.d)) {
            bad("sigma must be a d x d matrix");
        } else if (!all_finite(market.sigma)) {
            bad("sigma entries must be finite");
        } else if (std::fabs(determinant(market.sigma, market.d)) < 1e-12) {
            bad("sigma singular");
        }
    }

    if (cost.alpha.size() != static_cast<std::size_t>(market.d))
        bad("alpha must have length d");
    else if (!all_finite(cost.alpha))
        bad("alpha entries must be finite");
    if (!cost.zero_cost) {
        if (cost.beta.size() != static_cast<std::size_t>(market.d)) {
            bad("beta must have length d");
        } else {
            for (double bi : cost.beta)
                if (!(std::isfinite(bi) && bi > 0.0)) {
                    bad("beta must be strictly positive");
                    break;
                }
        }
    }
    return report;
}

Integrands integrands_from_controls(const ContractControls& controls,
                                    const Preferences& preferences,
                                    double g_value) {
    Integrands out;
    const double ra = preferences.R_A;
    out.yX = 0.5 * (controls.gammaX + ra * controls.zX * controls.zX);
    out.y1 = controls.gamma1 + ra * controls.zX * controls.z1;
    out.h = -g_value + 0.5 * ra * controls.z1 * controls.z1;
    return out;
}

RecoveredControls controls_from_integrands(double zX, double z1,
                                           const Integrands& integrands,
                                           const Preferences& preferences) {
    RecoveredControls out;
    const double ra = preferences.R_A;
    out.gammaX = 2.0 * integrands.yX - ra * zX * zX;
    out.gamma1 = integrands.y1 - ra * zX * z1;
    out.g_value = 0.5 * ra * z1 * z1 - integrands.h;
    return out;
}

double determinant(const std::vector<double>& m, int d) {
    if (m.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
        throw std::invalid_argument("determinant: matrix size mismatch");
    std::vector<double> a = m;
    double det = 1.0;
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int r = col + 1; r < d; ++r)
            if (std::fabs(a[static_cast<std::size_t>(r) * d + col]) >
                std::fabs(a[static_cast<std::size_t>(pivot) * d + col]))
                pivot = r;
        if (a[static_cast<std::size_t>(pivot) * d + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < d; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * d + j],
                          a[static_cast<std::size_t>(col) * d + j]);
            det = -det;
        }
        double p = a[static_cast<std::size_t>(col) * d + col];
        det *= p;
        for (int r = col + 1; r < d; ++r) {
            double f = a[static_cast<std::size_t>(r) * d + col] / p;
            for (int j = col; j < d; ++j)
                a[static_cast<std::size_t>(r) * d + j] -=
                    f * a[static_cast<std::size_t>(col) * d + j];
        }
    }
    return det;
}

}  // namespace volhaz
