#include "oamsim/lg.hpp"

#include <cmath>
#include <string>

namespace oamsim {

double assoc_laguerre(int p, int a, double x) {
    if (p == 0) return 1.0;
    if (p == 1) return 1.0 + a - x;
    double lm2 = 1.0;
    double lm1 = 1.0 + a - x;
    for (int k = 2; k <= p; ++k) {
        double lk = ((2.0 * k - 1.0 + a - x) * lm1 - (k - 1.0 + a) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
    }
    return lm1;
}

void check_mode_resolved(const LgParams& params, const Grid& grid) {
    if (!(params.w > 0))
        throw std::invalid_argument("lg_mode: waist must be > 0");
    if (params.p < 0)
        throw std::invalid_argument("lg_mode: radial index p must be >= 0");
    // twice the mode rms radius plus a three-sigma Gaussian margin; truncated
    // power beyond this is < 1e-6 of the norm
    double span = params.w * (std::sqrt(std::abs(params.l) + 2.0 * params.p + 1.0) + 3.0) / std::sqrt(2.0);
    if (grid.extent < span)
        throw std::invalid_argument("lg_mode: grid extent " + std::to_string(grid.extent) +
                                    " m does not contain the mode, need >= " + std::to_string(span));
    if (grid.spacing() > params.w / 8.0)
        throw std::invalid_argument("lg_mode: grid spacing " + std::to_string(grid.spacing()) +
                                    " m too coarse for waist " + std::to_string(params.w) + " m");
}

cplx lg_value(const LgParams& params, double x, double y) {
    int a = std::abs(params.l);
    double r2 = x * x + y * y;
    double u = 2.0 * r2 / (params.w * params.w);
    // sqrt(2 p! / (pi (p+|l|)!)) / w; the factorial ratio via a running product
    double fact_ratio = 1.0;
    for (int k = params.p + 1; k <= params.p + a; ++k) fact_ratio /= k;
    double norm = std::sqrt(2.0 / M_PI * fact_ratio) / params.w;
    double radial = norm * std::pow(std::sqrt(u), a) * assoc_laguerre(params.p, a, u) * std::exp(-r2 / (params.w * params.w));
    double phase = params.l * std::atan2(y, x);
    return radial * cplx(std::cos(phase), std::sin(phase));
}

ScalarField lg_mode(const LgParams& params, const Grid& grid) {
    grid.validate();
    check_mode_resolved(params, grid);
    ScalarField field(grid);
    for (int iy = 0; iy < grid.n; ++iy) {
        double y = grid.coord(iy);
        for (int ix = 0; ix < grid.n; ++ix) {
            field.at(ix, iy) = lg_value(params, grid.coord(ix), y);
        }
    }
    return field;
}

} // namespace oamsim
