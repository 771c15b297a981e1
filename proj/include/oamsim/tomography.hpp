#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "oamsim/spdc.hpp"

namespace oamsim {

// Two-qubit OAM subspace {|l>, |0>} x {|l>, |0>}, basis order
// {|l,l>, |l,0>, |0,l>, |0,0>}.
struct QubitBasis {
    int l = 2;
    void validate() const;
};

// Per-arm projection mode a|l> + b|0>.
struct ArmSetting {
    cplx a, b;
};

struct ProjectorSetting {
    ArmSetting signal;
    ArmSetting idler;
};

// The per-arm tetrad {|l>, |0>, (|l>+|0>)/sqrt2, (|l>+i|0>)/sqrt2}; the 16
// joint products make linear inversion well-posed.
std::array<ArmSetting, 4> tomography_tetrad();
std::array<ProjectorSetting, 16> tomography_settings();

struct CountRecord {
    int setting = 0;        // index into tomography_settings()
    double rate = 0;        // coincidence probability
    long long counts = 0;   // observed counts
    long long scale = 0;    // counts per setting N
};

struct DensityMatrix {
    std::array<cplx, 16> rho{}; // row-major 4x4

    cplx& at(int r, int c) { return rho[static_cast<std::size_t>(r) * 4 + c]; }
    const cplx& at(int r, int c) const { return rho[static_cast<std::size_t>(r) * 4 + c]; }
    double trace_real() const;
};

// |A|^2 / sum|C|^2 with A the coherent sum of C over the qubit subspace.
// Joint amplitudes outside the subspace stay in the normalization only;
// that is the cross-talk mechanism.
double projection_probability(const JointSpectrum& joint, const QubitBasis& basis,
                              const ProjectorSetting& setting);

// 16 settings; noise off: counts = round(N * rate), noise on: Poisson(N * rate)
// from the given seed.
std::vector<CountRecord> run_tomography(const JointSpectrum& joint, const QubitBasis& basis,
                                        long long counts_per_setting, bool noise,
                                        std::uint64_t seed);

// Linear inversion of the 16 rates, then projection to the physical cone
// (eigenvalue clipping + trace renormalization).
DensityMatrix reconstruct(const std::vector<CountRecord>& records);

// F = <psi| rho |psi>, |psi> = (|l,0> + |0,l>)/sqrt2.
double fidelity(const DensityMatrix& rho);

struct FidelityPoint {
    double ratio = 0;
    double F = 0;
    DensityMatrix rho;
};

std::vector<FidelityPoint> fidelity_sweep(const PumpSpec& base, const std::vector<double>& shifts,
                                          const CrystalParams& crystal, const QubitBasis& basis,
                                          long long counts_per_setting, bool noise,
                                          std::uint64_t seed, const Grid& grid, int ls_min,
                                          int ls_max, int li_min, int li_max, int threads = 1);

} // namespace oamsim
