#pragma once

#include <functional>

#include "oamsim/grid.hpp"

namespace oamsim {

// integral conj(a)*b d^2r by the midpoint Riemann sum, row-major accumulation
cplx inner_product(const ScalarField& a, const ScalarField& b);

// Same integral evaluated on a grid refined by `refinement` per axis, from a
// pointwise function of (x, y). Test oracle for discretization error; not
// used by any production path.
cplx oracle_integrate(const std::function<cplx(double, double)>& fn, const Grid& grid,
                      int refinement);

} // namespace oamsim
