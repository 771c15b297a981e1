#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "oamsim/config.hpp"
#include "oamsim/csvio.hpp"
#include "oamsim/oam_spectrum.hpp"
#include "oamsim/parallel.hpp"
#include "oamsim/spdc.hpp"
#include "oamsim/tomography.hpp"
#include "oamsim/version.hpp"
#include "oamsim/vortex.hpp"

namespace {

using namespace oamsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CliOptions {
    std::string config_path;
    std::string out_dir;       // overrides config output.directory
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

std::string ratio_tag(double ratio) {
    // 0.25 -> "0p25"; keeps filenames shell-friendly
    std::string s = format_double(ratio);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

ExperimentConfig load(const CliOptions& opt) {
    ExperimentConfig cfg = load_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.output.directory = opt.out_dir;
    if (opt.seed_set) cfg.tomo.seed = opt.seed;
    return cfg;
}

std::vector<std::pair<std::string, std::string>> grid_meta(const ExperimentConfig& cfg,
                                                           const Grid& grid) {
    return {
        {"b_convention", to_string(cfg.schmidt.b_convention)},
        {"grid_n", std::to_string(grid.n)},
        {"grid_extent_m", format_double(grid.extent)},
        {"grid_spacing_m", format_double(grid.spacing())},
    };
}

std::string spectrum_csv(const ExperimentConfig& cfg, const Grid& grid, const OamSpectrum& spec,
                         const std::string& what) {
    auto meta = grid_meta(cfg, grid);
    meta.emplace_back("content", what);
    meta.emplace_back("captured_fraction", format_double(spec.captured_fraction));
    if (spec.range_warning)
        meta.emplace_back("warning", "captured_fraction below 0.999, l range may be too small");
    meta.emplace_back("units", "l dimensionless, P_l dimensionless");
    std::string s = metadata_header(config_hash(cfg), meta);
    s += "l,P_l\n";
    for (int l = spec.l_min; l <= spec.l_max; ++l)
        s += std::to_string(l) + "," + format_double(spec.weight(l)) + "\n";
    return s;
}

std::string intensity_csv(const ExperimentConfig& cfg, const ScalarField& field,
                          const std::string& what) {
    auto meta = grid_meta(cfg, field.grid);
    meta.emplace_back("content", what);
    meta.emplace_back("units", "intensity |E|^2, row-major, y down rows, x across columns");
    std::string s = metadata_header(config_hash(cfg), meta);
    for (int iy = 0; iy < field.grid.n; ++iy) {
        for (int ix = 0; ix < field.grid.n; ++ix) {
            if (ix) s += ",";
            s += format_double(std::norm(field.at(ix, iy)));
        }
        s += "\n";
    }
    return s;
}

int cmd_pump_spectrum(const CliOptions& opt) {
    ExperimentConfig cfg = load(opt);
    ensure_directory(cfg.output.directory);
    Grid grid = cfg.synthesis_grid();
    const auto& shifts = cfg.pump.shift_ratios;
    std::vector<std::pair<std::string, std::string>> files(shifts.size() * 2);
    parallel_for(opt.threads, shifts.size(), [&](std::size_t i) {
        PumpSpec spec = cfg.pump_spec();
        spec.shift_ratio = shifts[i];
        ScalarField pump = synthesize_shifted_vortex(spec, grid);
        ScalarField far = far_field(pump);
        OamSpectrum spectrum = power_spectrum(pump, cfg.numerics.l_min, cfg.numerics.l_max);
        std::string tag = "m" + std::to_string(spec.m) + "_shift" + ratio_tag(spec.shift_ratio);
        files[2 * i] = {cfg.output.directory + "/pump_farfield_" + tag + ".csv",
                        intensity_csv(cfg, far, "far-field intensity, pump " + tag)};
        files[2 * i + 1] = {cfg.output.directory + "/pump_spectrum_" + tag + ".csv",
                            spectrum_csv(cfg, grid, spectrum, "pump OAM spectrum, " + tag)};
    });
    for (const auto& [path, content] : files) {
        write_text_file(path, content);
        std::cout << "wrote " << path << "\n";
    }
    return kExitOk;
}

std::string joint_csv(const ExperimentConfig& cfg, const Grid& grid, const JointSpectrum& joint,
                      const std::string& what) {
    auto meta = grid_meta(cfg, grid);
    meta.emplace_back("content", what);
    meta.emplace_back("units", "coincidence probability, rows l_s, columns l_i");
    std::string s = metadata_header(config_hash(cfg), meta);
    s += "l_s\\l_i";
    for (int li = joint.li_min; li <= joint.li_max; ++li) s += "," + std::to_string(li);
    s += "\n";
    for (int ls = joint.ls_min; ls <= joint.ls_max; ++ls) {
        s += std::to_string(ls);
        for (int li = joint.li_min; li <= joint.li_max; ++li)
            s += "," + format_double(joint.prob(ls, li));
        s += "\n";
    }
    return s;
}

int cmd_spiral_spectrum(const CliOptions& opt) {
    ExperimentConfig cfg = load(opt);
    ensure_directory(cfg.output.directory);
    Grid grid = cfg.crystal_grid();
    CrystalParams crystal = cfg.crystal_params();
    const auto& shifts = cfg.pump.shift_ratios;
    std::vector<std::vector<std::pair<std::string, std::string>>> files(shifts.size());
    parallel_for(opt.threads, shifts.size(), [&](std::size_t i) {
        PumpSpec spec = cfg.pump_spec();
        spec.shift_ratio = shifts[i];
        ScalarField pump = pump_at_crystal(spec, crystal.w_p, grid);
        JointSpectrum joint = joint_spectrum(pump, cfg.numerics.l_min, cfg.numerics.l_max,
                                             cfg.numerics.l_min, cfg.numerics.l_max, crystal, 1);
        std::string tag = "m" + std::to_string(spec.m) + "_shift" + ratio_tag(spec.shift_ratio);
        files[i].push_back({cfg.output.directory + "/joint_spectrum_" + tag + ".csv",
                            joint_csv(cfg, grid, joint, "bi-photon joint spectrum, " + tag)});
        OamSpectrum cond = conditional_spectrum(joint, cfg.numerics.conditional_ls);
        files[i].push_back(
            {cfg.output.directory + "/conditional_ls" +
                 std::to_string(cfg.numerics.conditional_ls) + "_" + tag + ".csv",
             spectrum_csv(cfg, grid, cond,
                          "idler spectrum at fixed l_s=" +
                              std::to_string(cfg.numerics.conditional_ls) + ", " + tag)});
    });
    for (const auto& group : files)
        for (const auto& [path, content] : group) {
            write_text_file(path, content);
            std::cout << "wrote " << path << "\n";
        }
    return kExitOk;
}

int cmd_schmidt(const CliOptions& opt) {
    ExperimentConfig cfg = load(opt);
    ensure_directory(cfg.output.directory);
    Grid grid = cfg.crystal_grid();
    CrystalParams crystal = cfg.crystal_params();
    SchmidtParams sp = cfg.schmidt_params();

    auto rows = schmidt_sweep(cfg.pump_spec(), cfg.pump.shift_ratios, crystal,
                              cfg.numerics.sweep_l_min, cfg.numerics.sweep_l_max,
                              cfg.numerics.sweep_l_min, cfg.numerics.sweep_l_max, grid,
                              opt.threads);

    double K_analytic = analytic_schmidt_gaussian(crystal, sp);

    auto meta = grid_meta(cfg, grid);
    meta.emplace_back("content", "schmidt sweep, pump m=" + std::to_string(cfg.pump.m));
    meta.emplace_back("K_analytic_gaussian", format_double(K_analytic));
    meta.emplace_back("band_weight_cut", format_double(kBandWeightCut));
    meta.emplace_back("units", "ratio = x_o / w_G (FWHM radius), K dimensionless");
    std::string s = metadata_header(config_hash(cfg), meta);
    s += "ratio,band,weight,K\n";
    for (const auto& row : rows) {
        for (const auto& band : row.bands)
            s += format_double(row.ratio) + "," + std::to_string(band.l_p) + "," +
                 format_double(band.weight) + "," + format_double(band.K) + "\n";
        s += format_double(row.ratio) + ",TOTAL_SVD,1," + format_double(row.K_svd) + "\n";
        s += format_double(row.ratio) + ",TOTAL_WEIGHTED,1," + format_double(row.K_weighted) + "\n";
        s += format_double(row.ratio) + ",TOTAL_BAND_SUM,1," + format_double(row.K_band_sum) + "\n";
    }
    std::string path = cfg.output.directory + "/schmidt_sweep_m" + std::to_string(cfg.pump.m) + ".csv";
    write_text_file(path, s);
    std::cout << "wrote " << path << "\n";
    std::cout << "analytic Gaussian-pump K (" << to_string(sp.b_convention)
              << ") = " << format_double(K_analytic) << "\n";
    return kExitOk;
}

std::string density_json(const ExperimentConfig& cfg, const DensityMatrix& rho, double ratio,
                         double F) {
    nlohmann::json j;
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    j["oamsim_version"] = kVersion;
    j["config_hash"] = hash_hex;
    j["basis"] = {"|l,l>", "|l,0>", "|0,l>", "|0,0>"};
    j["qubit_l"] = cfg.tomo.l;
    j["shift_ratio"] = ratio;
    j["fidelity"] = F;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) {
            rr.push_back(rho.at(r, c).real());
            ri.push_back(rho.at(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    j["rho_real"] = re;
    j["rho_imag"] = im;
    return j.dump(2) + "\n";
}

int cmd_tomography(const CliOptions& opt) {
    ExperimentConfig cfg = load(opt);
    ensure_directory(cfg.output.directory);
    Grid grid = cfg.crystal_grid();
    CrystalParams crystal = cfg.crystal_params();
    QubitBasis basis{cfg.tomo.l};

    auto points = fidelity_sweep(cfg.pump_spec(), cfg.pump.shift_ratios, crystal, basis,
                                 cfg.tomo.counts_per_setting, cfg.tomo.noise, cfg.tomo.seed, grid,
                                 cfg.numerics.l_min, cfg.numerics.l_max, cfg.numerics.l_min,
                                 cfg.numerics.l_max, opt.threads);

    for (const auto& pt : points) {
        std::string path = cfg.output.directory + "/density_matrix_shift" + ratio_tag(pt.ratio) + ".json";
        write_text_file(path, density_json(cfg, pt.rho, pt.ratio, pt.F));
        std::cout << "wrote " << path << "\n";
    }

    auto meta = grid_meta(cfg, grid);
    meta.emplace_back("content", "Bell-state fidelity vs pump asymmetry, m=" +
                                     std::to_string(cfg.pump.m) + ", qubit l=" +
                                     std::to_string(cfg.tomo.l));
    meta.emplace_back("noise", cfg.tomo.noise ? "on" : "off");
    meta.emplace_back("seed", std::to_string(cfg.tomo.seed));
    meta.emplace_back("counts_per_setting", std::to_string(cfg.tomo.counts_per_setting));
    std::string s = metadata_header(config_hash(cfg), meta);
    s += "ratio,F\n";
    for (const auto& pt : points)
        s += format_double(pt.ratio) + "," + format_double(pt.F) + "\n";
    std::string path = cfg.output.directory + "/fidelity_sweep.csv";
    write_text_file(path, s);
    std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int cmd_calibrate_b(const CliOptions& opt) {
    ExperimentConfig cfg = load(opt);
    // calibration always runs at the source experiment's parameters
    CrystalParams paper;
    SchmidtParams sp = cfg.schmidt_params();
    const double target = 2.82;
    BConvention best = BConvention::SqrtLOverKp;
    double best_err = -1.0;
    std::printf("%-24s %-14s %-10s %s\n", "b_convention", "b [m]", "K", "|K-2.82|");
    for (BConvention c : {BConvention::SqrtLOverKp, BConvention::SqrtLOver2Kp,
                          BConvention::SqrtLLambdaOver2Pi}) {
        SchmidtParams trial = sp;
        trial.b_convention = c;
        double K = analytic_schmidt_gaussian(paper, trial);
        double err = std::abs(K - target);
        std::printf("%-24s %-14s %-10s %s\n", to_string(c).c_str(),
                    format_double(b_parameter(c, paper)).c_str(), format_double(K).c_str(),
                    format_double(err).c_str());
        if (best_err < 0 || err < best_err) {
            best_err = err;
            best = c;
        }
    }
    std::printf("selected: %s\n", to_string(best).c_str());
    std::printf("config fragment:\n[schmidt]\nb_convention = %s\n", to_string(best).c_str());
    return kExitOk;
}

int cmd_validate(const CliOptions& opt) {
    ExperimentConfig cfg = load(opt);
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    std::cout << "config ok, hash " << hash_hex << "\n";
    std::cout << serialize_config(cfg);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oamsim: asymmetric-pump SPDC orbital-angular-momentum simulator"};
    app.set_version_flag("--version", oamsim::kVersion);
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "experiment config file")->required();
    app.add_option("--out", opt.out_dir, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", opt.seed, "tomography RNG seed (overrides config)");
    app.add_option("--threads", opt.threads, "worker threads for sweep points")
        ->check(CLI::Range(1, 256));

    auto* pump = app.add_subcommand("pump-spectrum", "far-field images and OAM spectra per shift");
    auto* spiral = app.add_subcommand("spiral-spectrum", "joint and conditional spectra per shift");
    auto* schmidt = app.add_subcommand("schmidt", "Schmidt-number sweep over pump asymmetry");
    auto* tomo = app.add_subcommand("tomography", "two-qubit state tomography vs asymmetry");
    auto* calib = app.add_subcommand("calibrate-b", "pick the b convention closest to K=2.82");
    auto* validate = app.add_subcommand("validate", "check the config and print canonical form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }
    opt.seed_set = seed_opt->count() > 0;

    try {
        if (pump->parsed()) return cmd_pump_spectrum(opt);
        if (spiral->parsed()) return cmd_spiral_spectrum(opt);
        if (schmidt->parsed()) return cmd_schmidt(opt);
        if (tomo->parsed()) return cmd_tomography(opt);
        if (calib->parsed()) return cmd_calibrate_b(opt);
        if (validate->parsed()) return cmd_validate(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
