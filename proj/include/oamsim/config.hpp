#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oamsim/spdc.hpp"
#include "oamsim/tomography.hpp"

namespace oamsim {

// Everything a run needs, loadable from a flat INI-style file. All lengths
// in meters. Unknown keys or sections are hard errors.
struct ExperimentConfig {
    struct Pump {
        int m = 6;
        std::vector<double> shift_ratios{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};
        double w_G = 1.2e-3;
        double lambda_p = 405e-9;
    } pump;

    struct Crystal {
        double L = 30e-3;
        double w_p = 60e-6;
        double w_s = 60e-6;
        double w_i = 60e-6;
        double lambda_s = 810e-9;
        double lambda_i = 810e-9;
    } crystal;

    struct Numerics {
        int grid_n = 512;
        double extent_factor = 6.0;     // extent = factor * max relevant waist
        int l_min = -6, l_max = 6;      // joint-spectrum / tomography range
        int sweep_l_min = -10, sweep_l_max = 12; // schmidt sweep range
        int conditional_ls = 3;         // fixed signal mode for conditionals
    } numerics;

    struct Schmidt {
        double alpha = 0.85;
        double beta = 1.65;
        BConvention b_convention = BConvention::SqrtLOverKp;
    } schmidt;

    struct Tomo {
        int l = 2;
        long long counts_per_setting = 100000;
        bool noise = false;
        std::uint64_t seed = 1;
    } tomo;

    struct Output {
        std::string directory = "out";
        std::vector<std::string> formats{"csv", "json"};
    } output;

    void validate() const;

    CrystalParams crystal_params() const;
    SchmidtParams schmidt_params() const;
    PumpSpec pump_spec() const;          // at the synthesis plane (w = w_G)
    Grid synthesis_grid() const;         // extent_factor * w_G
    Grid crystal_grid() const;           // extent_factor * max(w_p, w_s, w_i)
};

// Parse the INI-style text. Errors carry 1-based line numbers.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical serialization; load(serialize(c)) == c and its FNV-1a hash is
// the config_hash stamped into every output file.
std::string serialize_config(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

} // namespace oamsim
