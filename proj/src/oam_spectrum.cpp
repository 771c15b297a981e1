#include "oamsim/oam_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace oamsim {

namespace {

// Separable 6-point Lagrange interpolation in grid-index units; the field is
// taken as zero outside the sampled square (synthesized beams have decayed
// there by the resolution preconditions).
struct Interpolator {
    const ScalarField& field;
    int n;
    double inv_h, extent;

    explicit Interpolator(const ScalarField& f)
        : field(f), n(f.grid.n), inv_h(1.0 / f.grid.spacing()), extent(f.grid.extent) {}

    static void weights(double frac, double wts[6]) {
        // nodes at offsets -2..3 relative to the base sample, frac in [0,1)
        for (int i = 0; i < 6; ++i) {
            double xi = i - 2.0;
            double w = 1.0;
            for (int j = 0; j < 6; ++j) {
                if (j == i) continue;
                double xj = j - 2.0;
                w *= (frac - xj) / (xi - xj);
            }
            wts[i] = w;
        }
    }

    cplx operator()(double x, double y) const {
        double u = (x + extent) * inv_h - 0.5;
        double v = (y + extent) * inv_h - 0.5;
        int iu = static_cast<int>(std::floor(u));
        int iv = static_cast<int>(std::floor(v));
        double wu[6], wv[6];
        weights(u - iu, wu);
        weights(v - iv, wv);
        cplx acc(0.0, 0.0);
        for (int dy = 0; dy < 6; ++dy) {
            int yy = iv + dy - 2;
            if (yy < 0 || yy >= n) continue;
            cplx row(0.0, 0.0);
            for (int dx = 0; dx < 6; ++dx) {
                int xx = iu + dx - 2;
                if (xx < 0 || xx >= n) continue;
                row += wu[dx] * field.at(xx, yy);
            }
            acc += wv[dy] * row;
        }
        return acc;
    }
};

} // namespace

AzimuthalProfiles azimuthal_components(const ScalarField& field, int l_min, int l_max) {
    field.grid.validate();
    if (l_min > l_max)
        throw std::invalid_argument("azimuthal_components: l_min > l_max");
    if (l_min < -kMaxAzimuthalIndex || l_max > kMaxAzimuthalIndex)
        throw std::invalid_argument("azimuthal_components: |l| beyond supported bound " +
                                    std::to_string(kMaxAzimuthalIndex));

    const int n_l = l_max - l_min + 1;
    const int n_theta = 8 * (std::abs(l_max) + std::abs(l_min) + 8);
    // even ring count for the Simpson weights in power_spectrum
    int n_r = field.grid.n / 2;
    if (n_r % 2 != 0) ++n_r;
    const double dr = field.grid.extent / n_r;

    Interpolator interp(field);

    AzimuthalProfiles out;
    out.l_min = l_min;
    out.l_max = l_max;
    out.radial_step = dr;
    out.radii.resize(n_r + 1);
    out.a.assign(n_l, std::vector<cplx>(n_r + 1, cplx(0.0, 0.0)));

    std::vector<cplx> ring(n_theta);
    std::vector<cplx> twiddle(n_theta); // e^{-i theta_t}
    for (int t = 0; t < n_theta; ++t) {
        double th = 2.0 * M_PI * t / n_theta;
        twiddle[t] = cplx(std::cos(th), -std::sin(th));
    }

    for (int k = 0; k <= n_r; ++k) {
        double r = k * dr;
        out.radii[k] = r;
        if (k == 0) {
            // r = 0 carries no weight in the radial integral; profiles at the
            // axis are the on-axis value for l = 0 and zero otherwise
            cplx center = interp(0.0, 0.0);
            for (int li = 0; li < n_l; ++li)
                out.a[li][0] = (l_min + li == 0) ? center : cplx(0.0, 0.0);
            continue;
        }
        for (int t = 0; t < n_theta; ++t) {
            double th = 2.0 * M_PI * t / n_theta;
            ring[t] = interp(r * std::cos(th), r * std::sin(th));
        }
        for (int li = 0; li < n_l; ++li) {
            int l = l_min + li;
            // a_l(r) = (1/N) sum_t E(r, theta_t) e^{-il theta_t}
            cplx acc(0.0, 0.0);
            int idx = 0;
            int step = ((l % n_theta) + n_theta) % n_theta;
            for (int t = 0; t < n_theta; ++t) {
                acc += ring[t] * twiddle[idx];
                idx += step;
                if (idx >= n_theta) idx -= n_theta;
            }
            out.a[li][k] = acc / static_cast<double>(n_theta);
        }
    }
    return out;
}

OamSpectrum power_spectrum(const AzimuthalProfiles& profiles, double grid_power) {
    if (!(grid_power > 0))
        throw std::invalid_argument("power_spectrum: field has zero power");
    const int n_l = profiles.l_max - profiles.l_min + 1;
    const std::size_t n_nodes = profiles.radii.size();
    const double dr = profiles.radial_step;

    OamSpectrum spec;
    spec.l_min = profiles.l_min;
    spec.l_max = profiles.l_max;
    spec.weights.assign(n_l, 0.0);

    // composite Simpson over nodes r_k = k dr, integrand |a_l|^2 r
    double total = 0.0;
    for (int li = 0; li < n_l; ++li) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_nodes; ++k) {
            double f = std::norm(profiles.a[li][k]) * profiles.radii[k];
            double w = (k == 0 || k == n_nodes - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            s += w * f;
        }
        double p = 2.0 * M_PI * s * dr / 3.0;
        spec.weights[li] = p;
        total += p;
    }

    spec.captured_fraction = total / grid_power;
    spec.range_warning = spec.captured_fraction < 0.999;
    if (total > 0)
        for (double& p : spec.weights) p /= total;
    return spec;
}

OamSpectrum power_spectrum(const ScalarField& field, int l_min, int l_max) {
    return power_spectrum(azimuthal_components(field, l_min, l_max), field.power());
}

std::vector<int> dominant_modes(const OamSpectrum& spec, double mass) {
    if (!(mass > 0) || mass > 1.0)
        throw std::invalid_argument("dominant_modes: mass must be in (0, 1]");
    std::vector<int> order(spec.weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int ia, int ib) {
        int la = spec.l_min + ia, lb = spec.l_min + ib;
        if (spec.weights[ia] != spec.weights[ib]) return spec.weights[ia] > spec.weights[ib];
        if (std::abs(la) != std::abs(lb)) return std::abs(la) < std::abs(lb);
        return la < lb;
    });
    std::vector<int> modes;
    double acc = 0.0;
    for (int idx : order) {
        modes.push_back(spec.l_min + idx);
        acc += spec.weights[idx];
        if (acc >= mass) break;
    }
    return modes;
}

double spectrum_mean(const OamSpectrum& spec) {
    double s = 0.0;
    for (std::size_t i = 0; i < spec.weights.size(); ++i)
        s += (spec.l_min + static_cast<int>(i)) * spec.weights[i];
    return s;
}

} // namespace oamsim
