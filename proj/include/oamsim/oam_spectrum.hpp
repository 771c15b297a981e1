#pragma once

#include <vector>

#include "oamsim/grid.hpp"

namespace oamsim {

inline constexpr int kMaxAzimuthalIndex = 12;

// Azimuthal decomposition E(r, theta) = sum_l a_l(r) exp(i l theta) about the
// grid center. Profiles are stored per l on the shared radial grid.
struct AzimuthalProfiles {
    int l_min = 0, l_max = 0;
    std::vector<double> radii;              // ring radii [m]
    std::vector<std::vector<cplx>> a;       // a[l - l_min][ring]
    double radial_step = 0;

    const std::vector<cplx>& profile(int l) const { return a.at(static_cast<std::size_t>(l - l_min)); }
};

// Normalized OAM power spectrum P_l with the fraction of grid power the
// decomposition captured (range truncation + off-disk power show up here).
struct OamSpectrum {
    int l_min = 0, l_max = 0;
    std::vector<double> weights;            // P_l, sum 1 over the range
    double captured_fraction = 1.0;         // captured power / grid power
    bool range_warning = false;             // captured_fraction < 0.999

    double weight(int l) const { return weights.at(static_cast<std::size_t>(l - l_min)); }
};

AzimuthalProfiles azimuthal_components(const ScalarField& field, int l_min, int l_max);

OamSpectrum power_spectrum(const ScalarField& field, int l_min, int l_max);
OamSpectrum power_spectrum(const AzimuthalProfiles& profiles, double grid_power);

// Smallest set of l, by descending P_l, with cumulative weight >= mass.
// Ties go to smaller |l|, then smaller l.
std::vector<int> dominant_modes(const OamSpectrum& spec, double mass);

// mean Sum l*P_l of the spectrum
double spectrum_mean(const OamSpectrum& spec);

} // namespace oamsim
