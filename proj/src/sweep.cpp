#include "volhaz/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "volhaz/firstbest.hpp"
#include "volhaz/principal.hpp"

namespace volhaz {

namespace {

double pct_loss(double fb, double sb) {
    const double gap = fb - sb;
    if (std::fabs(fb) < 1e-9) return gap;  // guarded: absolute gap
    return gap / std::fabs(fb);
}

}  // namespace

std::vector<FigureRow> sweep(const SweepSpec& spec) {
    if (!(spec.lo < spec.hi)) throw std::invalid_argument("sweep: requires lo < hi");
    if (spec.n_points < 2) throw std::invalid_argument("sweep: requires n_points >= 2");
    if (spec.parameter != SweepParameter::Alpha2)
        throw std::invalid_argument("sweep: unsupported parameter");
    if (spec.market.d < 2) throw std::invalid_argument("sweep: requires d >= 2");

    std::vector<FigureRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.n_points));
    QuadraticCost cost = spec.cost;
    std::vector<ContractControls> chain_full, chain_g0;
    for (int i = 0; i < spec.n_points; ++i) {
        const double alpha2 =
            spec.lo + (spec.hi - spec.lo) * i / static_cast<double>(spec.n_points - 1);
        cost.alpha[1] = alpha2;
        FigureRow row;
        row.alpha2 = alpha2;
        try {
            row.fb_rate =
                first_best_certainty_equivalent_rate(spec.market, cost, spec.preferences);
            SecondBestSolution full = optimize(spec.market, cost, spec.preferences,
                                               Restriction::Full, chain_full);
            SecondBestSolution g0 = optimize(spec.market, cost, spec.preferences,
                                             Restriction::GammaZero, chain_g0);
            row.sb_rate = full.rate;
            row.sb_rate_gamma0 = g0.rate;
            row.pct_loss_fb = pct_loss(row.fb_rate, full.rate);
            row.pct_loss_gamma0 = pct_loss(row.fb_rate, g0.rate);
            row.qv_sensitivity = 0.5 * (full.controls.gammaX +
                                        spec.preferences.R_A * full.controls.zX *
                                            full.controls.zX);
            row.z_star = full.controls.zX;
            row.gamma_star = full.controls.gammaX;
            chain_full = {full.controls};
            chain_g0 = {g0.controls};
        } catch (const std::exception&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.fb_rate = row.sb_rate = row.sb_rate_gamma0 = nan;
            row.pct_loss_fb = row.pct_loss_gamma0 = nan;
            row.qv_sensitivity = row.z_star = row.gamma_star = nan;
            chain_full.clear();
            chain_g0.clear();
        }
        rows.push_back(row);
    }
    return rows;
}

SweepSpec default_figure_spec() {
    SweepSpec spec;
    spec.lo = -2.0;
    spec.hi = 6.0;
    spec.n_points = 81;
    spec.preferences = Preferences{1.0, 1.0, 1.0};
    spec.market.d = 2;
    spec.market.d0 = 0;
    spec.market.b = {1.8, 1.8};
    spec.cost.alpha = {1.0, 0.0};  // alpha_2 replaced by the sweep grid
    spec.cost.beta = {1.0, 1.0};
    return spec;
}

void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows) {
    os << "alpha2,fb_rate,sb_rate,sb_rate_gamma0,pct_loss_fb,pct_loss_gamma0,"
          "qv_sensitivity,z_star,gamma_star\n";
    char buf[768];
    for (const FigureRow& r : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.alpha2, r.fb_rate, r.sb_rate, r.sb_rate_gamma0, r.pct_loss_fb,
                      r.pct_loss_gamma0, r.qv_sensitivity, r.z_star, r.gamma_star);
        os << buf;
    }
}

std::vector<FigureRow> read_figure_csv(std::istream& is) {
    std::vector<FigureRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        double vals[9];
        for (int i = 0; i < 9; ++i) {
            if (!std::getline(ss, field, ','))
                throw std::invalid_argument("figure csv: short row");
            vals[i] = std::strtod(field.c_str(), nullptr);
        }
        FigureRow r;
        r.alpha2 = vals[0];
        r.fb_rate = vals[1];
        r.sb_rate = vals[2];
        r.sb_rate_gamma0 = vals[3];
        r.pct_loss_fb = vals[4];
        r.pct_loss_gamma0 = vals[5];
        r.qv_sensitivity = vals[6];
        r.z_star = vals[7];
        r.gamma_star = vals[8];
        rows.push_back(r);
    }
    return rows;
}

}  // namespace volhaz
