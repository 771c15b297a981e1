#include "oamsim/quadrature.hpp"

namespace oamsim {

cplx inner_product(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid)
        throw std::invalid_argument("inner_product: fields live on different grids");
    cplx s(0.0, 0.0);
    const std::size_t count = a.amp.size();
    for (std::size_t i = 0; i < count; ++i) s += std::conj(a.amp[i]) * b.amp[i];
    double w = a.grid.spacing();
    return s * (w * w);
}

cplx oracle_integrate(const std::function<cplx(double, double)>& fn, const Grid& grid,
                      int refinement) {
    if (refinement < 2)
        throw std::invalid_argument("oracle_integrate: refinement must be >= 2");
    grid.validate();
    const long long nf = static_cast<long long>(grid.n) * refinement;
    const double h = grid.spacing() / refinement;
    cplx s(0.0, 0.0);
    for (long long iy = 0; iy < nf; ++iy) {
        double y = -grid.extent + (iy + 0.5) * h;
        for (long long ix = 0; ix < nf; ++ix) {
            s += fn(-grid.extent + (ix + 0.5) * h, y);
        }
    }
    return s * (h * h);
}

} // namespace oamsim
