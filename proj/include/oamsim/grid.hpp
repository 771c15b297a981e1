#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace oamsim {

using cplx = std::complex<double>;

// Uniform square grid on [-extent, extent]^2, midpoint sampling so no
// sample sits exactly on the optical axis. Coordinates in meters.
struct Grid {
    int n = 0;           // samples per axis, even, >= 16
    double extent = 0;   // half-width [m]

    Grid() = default;
    Grid(int n_, double extent_) : n(n_), extent(extent_) { validate(); }

    void validate() const {
        if (n < 16 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 16, got n=" + std::to_string(n));
        if (!(extent > 0))
            throw std::invalid_argument("Grid: extent must be > 0");
    }

    double spacing() const { return 2.0 * extent / n; }
    // midpoint coordinate of sample j along either axis
    double coord(int j) const { return -extent + (j + 0.5) * spacing(); }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }

    bool operator==(const Grid& o) const { return n == o.n && extent == o.extent; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Complex transverse field sampled on a Grid. Row-major: amp[iy*n + ix],
// so ix runs along x and iy along y. All reductions over the samples use
// this fixed row-major order to keep sums bit-reproducible.
struct ScalarField {
    Grid grid;
    std::vector<cplx> amp;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), amp(g.size(), cplx(0.0, 0.0)) {}

    cplx& at(int ix, int iy) { return amp[static_cast<std::size_t>(iy) * grid.n + ix]; }
    const cplx& at(int ix, int iy) const { return amp[static_cast<std::size_t>(iy) * grid.n + ix]; }

    // integral of |E|^2 over the plane (midpoint rule)
    double power() const {
        double s = 0.0;
        for (const cplx& v : amp) s += std::norm(v);
        return s * grid.spacing() * grid.spacing();
    }

    // scale to unit power; rejects numerically empty fields
    void normalize() {
        double p = power();
        if (!(p > 0))
            throw std::runtime_error("ScalarField::normalize: field has zero power");
        double s = 1.0 / std::sqrt(p);
        for (cplx& v : amp) v *= s;
    }
};

} // namespace oamsim
