#include <doctest.h>

#include <cmath>

#include "oamsim/oam_spectrum.hpp"
#include "oamsim/vortex.hpp"

using namespace oamsim;

namespace {
Grid synth_grid(double w) { return Grid(512, 6.0 * w); }
} // namespace

TEST_CASE("pump spec validation") {
    CHECK_THROWS_AS(synthesize_shifted_vortex({-1, 0.0, 1e-3}, synth_grid(1e-3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize_shifted_vortex({13, 0.0, 1e-3}, synth_grid(1e-3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize_shifted_vortex({2, -0.5, 1e-3}, synth_grid(1e-3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize_shifted_vortex({2, 0.0, 0.0}, synth_grid(1e-3)),
                    std::invalid_argument);
    // singularity pushed beyond the grid edge
    CHECK_THROWS_AS(synthesize_shifted_vortex({2, 12.0, 1e-3}, synth_grid(1e-3)),
                    std::invalid_argument);
}

TEST_CASE("centered plate gives a pure charge-m vortex") {
    double w = 1.2e-3;
    for (int m : {1, 4, 6, 8}) {
        ScalarField pump = synthesize_shifted_vortex({m, 0.0, w}, synth_grid(w));
        CHECK(pump.power() == doctest::Approx(1.0).epsilon(1e-6));
        OamSpectrum spec = power_spectrum(pump, -12, 12);
        CHECK(spec.weight(m) >= 0.99);
    }
}

TEST_CASE("moderate shift spreads the spectrum over the listed modes") {
    double w = 1.2e-3;
    ScalarField pump = synthesize_shifted_vortex({2, 0.5, w}, synth_grid(w));
    OamSpectrum spec = power_spectrum(pump, -12, 12);
    auto dom = dominant_modes(spec, 0.9);
    for (int l : dom) {
        CHECK(l >= 0);
        CHECK(l <= 3);
    }
    double cov = spec.weight(0) + spec.weight(1) + spec.weight(2) + spec.weight(3);
    CHECK(cov >= 0.9);
}

TEST_CASE("large shift recovers the gaussian mode") {
    double w = 1.2e-3;
    ScalarField pump = synthesize_shifted_vortex({1, 5.0, w}, synth_grid(w));
    OamSpectrum spec = power_spectrum(pump, -12, 12);
    CHECK(spec.weight(0) >= 0.9);
}

TEST_CASE("spectrum mean drifts down monotonically with shift") {
    double w = 1.2e-3;
    double prev = 1e9;
    for (int k = 0; k <= 8; ++k) {
        double ratio = 2.0 * k / 8.0;
        ScalarField pump = synthesize_shifted_vortex({4, ratio, w}, synth_grid(w));
        double mean = spectrum_mean(power_spectrum(pump, -12, 12));
        CHECK(mean <= prev + 1e-9);
        prev = mean;
    }
}

TEST_CASE("far field of a gaussian is a centered gaussian") {
    double w = 1.2e-3;
    ScalarField pump = synthesize_shifted_vortex({0, 0.0, w}, synth_grid(w));
    ScalarField far = far_field(pump);
    CHECK(far.power() == doctest::Approx(1.0).epsilon(1e-6));

    int n = far.grid.n;
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < far.amp.size(); ++i)
        if (std::norm(far.amp[i]) > best) {
            best = std::norm(far.amp[i]);
            imax = i;
        }
    int iy = static_cast<int>(imax) / n, ix = static_cast<int>(imax) % n;
    CHECK(std::abs(ix - n / 2) <= 1);
    CHECK(std::abs(iy - n / 2) <= 1);
    // radial symmetry: x and y cuts match
    for (int k = 0; k < n; ++k)
        CHECK(std::norm(far.at(k, n / 2)) ==
              doctest::Approx(std::norm(far.at(n / 2, k))).epsilon(1e-6));
}

TEST_CASE("far field of a centered vortex is an annulus") {
    double w = 1.2e-3;
    ScalarField pump = synthesize_shifted_vortex({2, 0.0, w}, synth_grid(w));
    ScalarField far = far_field(pump);
    int n = far.grid.n;
    double center = 0.0;
    for (int ix : {n / 2 - 1, n / 2})
        for (int iy : {n / 2 - 1, n / 2}) center = std::max(center, std::norm(far.at(ix, iy)));
    double peak = 0.0;
    for (const cplx& v : far.amp) peak = std::max(peak, std::norm(v));
    CHECK(center < 1e-4 * peak);
}

TEST_CASE("shifted vortex far field has a displaced dark core") {
    double w = 1.2e-3;
    ScalarField far = far_field(synthesize_shifted_vortex({2, 0.5, w}, synth_grid(w)));
    int n = far.grid.n;
    // intensity centroid stays near the axis while the darkest point inside
    // the bright region moves off it
    double cx = 0, cy = 0, tot = 0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            double I = std::norm(far.at(ix, iy));
            cx += I * far.grid.coord(ix);
            cy += I * far.grid.coord(iy);
            tot += I;
        }
    cx /= tot;
    cy /= tot;
    double peak = 0.0;
    for (const cplx& v : far.amp) peak = std::max(peak, std::norm(v));
    // darkest sample within a small disk around the centroid
    double kscale = far.grid.extent / 16.0;
    double dark = peak;
    double dark_x = 0, dark_y = 0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            double dx = far.grid.coord(ix) - cx, dy = far.grid.coord(iy) - cy;
            if (dx * dx + dy * dy > kscale * kscale) continue;
            double I = std::norm(far.at(ix, iy));
            if (I < dark) {
                dark = I;
                dark_x = far.grid.coord(ix);
                dark_y = far.grid.coord(iy);
            }
        }
    double off = std::hypot(dark_x - cx, dark_y - cy);
    CHECK(off > 2.0 * far.grid.spacing());
}

TEST_CASE("OAM spectrum is preserved under the far-field transform") {
    double w = 1.2e-3;
    ScalarField pump = synthesize_shifted_vortex({2, 0.5, w}, synth_grid(w));
    OamSpectrum near_spec = power_spectrum(pump, -8, 8);
    OamSpectrum far_spec = power_spectrum(far_field(pump), -8, 8);
    for (int l = -8; l <= 8; ++l)
        CHECK(std::abs(near_spec.weight(l) - far_spec.weight(l)) < 1e-3);
}

TEST_CASE("pump at crystal keeps the normalized asymmetry") {
    PumpSpec spec{6, 0.75, 1.2e-3};
    double w_p = 60e-6;
    ScalarField pump = pump_at_crystal(spec, w_p, Grid(512, 6.0 * w_p));
    CHECK(pump.power() == doctest::Approx(1.0).epsilon(1e-6));
    OamSpectrum sp = power_spectrum(pump, -12, 12);
    // top modes within the l <= m ladder, centered below m
    auto dom = dominant_modes(sp, 0.5);
    for (int l : dom) {
        CHECK(l >= 1);
        CHECK(l <= 6);
    }
    CHECK(spectrum_mean(sp) < 6.0);
    CHECK(spectrum_mean(sp) > 2.0);
}
