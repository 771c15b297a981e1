#pragma once

#include "oamsim/grid.hpp"

namespace oamsim {

// Laguerre-Gaussian mode at its waist plane: azimuthal index l (sign = handedness),
// radial index p >= 0, waist radius w [m] (1/e^2 intensity radius).
struct LgParams {
    int l = 0;
    int p = 0;
    double w = 0;
};

// Associated Laguerre polynomial L_p^a(x) by the three-term recurrence in p.
double assoc_laguerre(int p, int a, double x);

// Grid adequate for LG_{l,p}(w): extent >= 4*w*sqrt(|l|+2p+1), spacing <= w/8.
void check_mode_resolved(const LgParams& params, const Grid& grid);

// Unit-norm LG_{l,p} at the waist plane.
ScalarField lg_mode(const LgParams& params, const Grid& grid);

// Pointwise value of the same mode; shared by lg_mode and the test oracles.
cplx lg_value(const LgParams& params, double x, double y);

} // namespace oamsim
