#pragma once

#include <iosfwd>
#include <vector>

#include "volhaz/model.hpp"

// Parameter sweeps over the agent's initial exposure alpha_2, producing the
// per-point first-best/second-best comparison data behind the loss and
// quadratic-variation-sensitivity figures.

namespace volhaz {

enum class SweepParameter { Alpha2 };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Alpha2;
    double lo = -2.0;
    double hi = 6.0;
    int n_points = 81;
    Preferences preferences;
    MarketModel market;
    QuadraticCost cost;
};

struct FigureRow {
    double alpha2 = 0.0;
    double fb_rate = 0.0;
    double sb_rate = 0.0;
    double sb_rate_gamma0 = 0.0;
    double pct_loss_fb = 0.0;      // (fb - sb) / |fb|; absolute gap when |fb| < 1e-9
    double pct_loss_gamma0 = 0.0;
    double qv_sensitivity = 0.0;   // yX* = (gammaX* + R_A zX*^2) / 2
    double z_star = 0.0;
    double gamma_star = 0.0;
};

// Grid over alpha_2 in [lo, hi]; each point runs the first-best closed form
// and the full / no-quadratic-variation optimizers. Optimizer failure flags
// the row with NaNs and the sweep continues.
std::vector<FigureRow> sweep(const SweepSpec& spec);

// Baseline parameter set used for figure reproduction (a documented choice):
// d = 2, d0 = 0, R_A = R_P = 1, b = (1.8, 1.8), beta = (1, 1), alpha_1 = 1,
// alpha_2 swept over [-2, 6] with 81 points.
SweepSpec default_figure_spec();

// Comma-separated, header row, %.17g floats, LF line endings; parsing an
// emitted file reproduces the rows bit-identically.
void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows);
std::vector<FigureRow> read_figure_csv(std::istream& is);

}  // namespace volhaz
