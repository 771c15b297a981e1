#pragma once

#include "oamsim/grid.hpp"

namespace oamsim {

// Gaussian beam through an off-axis spiral phase plate. shift_ratio follows
// the convention of the source experiment: it normalizes the plate offset by
// the intensity-FWHM radius of the envelope, x_off = shift_ratio * r_fwhm(w)
// with r_fwhm = sqrt(ln2/2) * w for amplitude exp(-r^2/w^2).
struct PumpSpec {
    int m = 0;              // plate winding number, 0..12
    double shift_ratio = 0; // x_o / r_fwhm, >= 0
    double w = 0;           // envelope amplitude scale [m]
    double lambda_p = 405e-9;

    void validate() const;
    // plate offset in meters for an envelope of scale w_env
    double offset(double w_env) const;
};

// ratio of intensity-FWHM radius to the 1/e^2 amplitude scale: sqrt(ln2/2)
double fwhm_radius_factor();

// E = N exp(-(x^2+y^2)/w^2) exp(i m atan2(y, x - x_off)), unit power.
// The envelope stays centered; only the phase singularity is displaced.
ScalarField synthesize_shifted_vortex(const PumpSpec& spec, const Grid& grid);

// Centered 2-D Fourier transform (zero-padded 4x internally, central n x n
// window returned), unit power. The output grid holds spatial frequencies;
// OAM content is preserved under this transform.
ScalarField far_field(const ScalarField& field);

// Pump at the crystal plane: same winding and shift_ratio, envelope rescaled
// to w_p. The focusing relay is modeled as preserving normalized asymmetry.
ScalarField pump_at_crystal(const PumpSpec& spec, double w_p, const Grid& grid);

} // namespace oamsim
