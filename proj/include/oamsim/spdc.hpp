#pragma once

#include <string>
#include <vector>

#include "oamsim/grid.hpp"
#include "oamsim/oam_spectrum.hpp"
#include "oamsim/vortex.hpp"

namespace oamsim {

// Degenerate collinear SPDC in the thin-crystal limit. The crystal length
// only enters the analytic Schmidt estimate; phase matching is taken perfect
// inside the transverse overlap.
struct CrystalParams {
    double length = 30e-3;     // L [m]
    double lambda_p = 405e-9;
    double lambda_s = 810e-9;
    double lambda_i = 810e-9;
    double w_p = 60e-6;        // pump waist at crystal [m]
    double w_s = 60e-6;        // signal collection waist [m]
    double w_i = 60e-6;        // idler collection waist [m]

    void validate() const;
    double pump_wavenumber() const { return 2.0 * M_PI / lambda_p; }
};

// Bi-photon amplitude matrix C[l_s, l_i] over a rectangular index range.
struct JointSpectrum {
    int ls_min = 0, ls_max = 0;
    int li_min = 0, li_max = 0;
    std::vector<cplx> amps;     // row-major [n_ls x n_li]
    std::vector<double> probs;  // |C|^2 normalized to sum 1

    int n_ls() const { return ls_max - ls_min + 1; }
    int n_li() const { return li_max - li_min + 1; }
    bool in_range(int ls, int li) const {
        return ls >= ls_min && ls <= ls_max && li >= li_min && li <= li_max;
    }
    std::size_t index(int ls, int li) const {
        return static_cast<std::size_t>(ls - ls_min) * n_li() + (li - li_min);
    }
    cplx amp(int ls, int li) const { return amps[index(ls, li)]; }
    double prob(int ls, int li) const { return probs[index(ls, li)]; }

    static JointSpectrum from_amplitudes(int ls_min, int ls_max, int li_min, int li_max,
                                         std::vector<cplx> amps);
};

enum class BConvention {
    SqrtLOverKp,      // b = sqrt(L / k_p)
    SqrtLOver2Kp,     // b = sqrt(L / (2 k_p))
    SqrtLLambdaOver2Pi // b = sqrt(L * lambda_p / (2 pi))
};

std::string to_string(BConvention c);
BConvention b_convention_from_string(const std::string& s);
double b_parameter(BConvention c, const CrystalParams& crystal);

struct SchmidtParams {
    double alpha = 0.85;
    double beta = 1.65;
    BConvention b_convention = BConvention::SqrtLOverKp;

    void validate() const;
};

// C(l_s, l_i) = integral E_p conj(LG_{l_s,0}; w_s) conj(LG_{l_i,0}; w_i) d^2r.
// Projection modes are p = 0 (single-mode-fiber collection).
cplx overlap_coefficient(const ScalarField& pump, int l_s, int l_i, const CrystalParams& crystal);

JointSpectrum joint_spectrum(const ScalarField& pump, int ls_min, int ls_max, int li_min,
                             int li_max, const CrystalParams& crystal, int threads = 1);

// Idler spectrum conditioned on a fixed signal mode (one row, renormalized).
OamSpectrum conditional_spectrum(const JointSpectrum& joint, int l_s_fixed);

// K = 1 / sum p_i^2 over normalized squared singular values of C.
double azimuthal_schmidt(const JointSpectrum& joint);

struct BandSchmidt {
    int l_p = 0;
    double weight = 0; // band probability mass
    double K = 0;      // Schmidt number of the band restriction
};

// Restriction to the anti-diagonal l_s + l_i = l_p, where the singular values
// are the entry magnitudes: K = (sum w)^2 / sum w^2.
BandSchmidt band_schmidt(const JointSpectrum& joint, int l_p);

// K = beta * ((w_p^2 + 4 a^2 b^2) / (4 w_p a b))^2 for a Gaussian pump.
double analytic_schmidt_gaussian(const CrystalParams& crystal, const SchmidtParams& sp);

struct SweepRow {
    double ratio = 0;
    double K_svd = 0;        // SVD Schmidt number of the full matrix
    double K_weighted = 0;   // sum over bands of weight * K_band
    double K_band_sum = 0;   // plain sum of K_band over bands above threshold
    std::vector<BandSchmidt> bands; // bands with weight >= band_weight_cut
};

inline constexpr double kBandWeightCut = 1e-3;

std::vector<SweepRow> schmidt_sweep(const PumpSpec& base, const std::vector<double>& shifts,
                                    const CrystalParams& crystal, int ls_min, int ls_max,
                                    int li_min, int li_max, const Grid& grid, int threads = 1);

} // namespace oamsim
