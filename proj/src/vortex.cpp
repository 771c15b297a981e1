#include "oamsim/vortex.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>
#include <vector>

namespace oamsim {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution of distinct
// plans on distinct arrays is.
std::mutex fftw_plan_mutex;
constexpr int kPadFactor = 4;
} // namespace

double fwhm_radius_factor() { return std::sqrt(std::log(2.0) / 2.0); }

void PumpSpec::validate() const {
    if (m < 0 || m > 12)
        throw std::invalid_argument("PumpSpec: winding number m must be in 0..12, got " +
                                    std::to_string(m));
    if (shift_ratio < 0)
        throw std::invalid_argument("PumpSpec: shift_ratio must be >= 0");
    if (!(w > 0))
        throw std::invalid_argument("PumpSpec: envelope scale w must be > 0");
    if (!(lambda_p > 0))
        throw std::invalid_argument("PumpSpec: pump wavelength must be > 0");
}

double PumpSpec::offset(double w_env) const { return shift_ratio * fwhm_radius_factor() * w_env; }

namespace {

ScalarField synthesize_with_waist(const PumpSpec& spec, double w_env, const Grid& grid) {
    spec.validate();
    grid.validate();
    double x_off = spec.offset(w_env);
    if (x_off >= grid.extent)
        throw std::invalid_argument("synthesize_shifted_vortex: singularity offset " +
                                    std::to_string(x_off) + " m lies outside the grid extent " +
                                    std::to_string(grid.extent) + " m");
    if (grid.spacing() > w_env / 8.0)
        throw std::invalid_argument("synthesize_shifted_vortex: grid too coarse for envelope");
    ScalarField field(grid);
    double inv_w2 = 1.0 / (w_env * w_env);
    for (int iy = 0; iy < grid.n; ++iy) {
        double y = grid.coord(iy);
        for (int ix = 0; ix < grid.n; ++ix) {
            double x = grid.coord(ix);
            double env = std::exp(-(x * x + y * y) * inv_w2);
            double phase = spec.m * std::atan2(y, x - x_off);
            field.at(ix, iy) = env * cplx(std::cos(phase), std::sin(phase));
        }
    }
    field.normalize();
    return field;
}

} // namespace

ScalarField synthesize_shifted_vortex(const PumpSpec& spec, const Grid& grid) {
    return synthesize_with_waist(spec, spec.w, grid);
}

ScalarField pump_at_crystal(const PumpSpec& spec, double w_p, const Grid& grid) {
    if (!(w_p > 0))
        throw std::invalid_argument("pump_at_crystal: w_p must be > 0");
    return synthesize_with_waist(spec, w_p, grid);
}

ScalarField far_field(const ScalarField& field) {
    const int n = field.grid.n;
    const int N = kPadFactor * n;
    const double h = field.grid.spacing();

    std::vector<cplx> buf(static_cast<std::size_t>(N) * N, cplx(0.0, 0.0));
    // per-axis phase turning the FFT into a semi-discrete transform between
    // midpoint-sampled x and k axes: phi(t) = (-1)^t exp(-i pi t / N)
    std::vector<cplx> phi(N);
    for (int t = 0; t < N; ++t) {
        double ang = -M_PI * t / N;
        cplx v(std::cos(ang), std::sin(ang));
        phi[t] = (t % 2 == 0) ? v : -v;
    }

    const int off = (N - n) / 2;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            buf[static_cast<std::size_t>(iy + off) * N + (ix + off)] =
                field.at(ix, iy) * phi[ix + off] * phi[iy + off];

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_dft_2d(N, N, reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }

    const double dk = 2.0 * M_PI / (N * h);
    ScalarField out(Grid(n, 0.5 * n * dk));
    for (int my = 0; my < n; ++my)
        for (int mx = 0; mx < n; ++mx)
            out.at(mx, my) =
                buf[static_cast<std::size_t>(my + off) * N + (mx + off)] * phi[mx + off] * phi[my + off];
    out.normalize();
    return out;
}

} // namespace oamsim
