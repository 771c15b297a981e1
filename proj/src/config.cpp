#include "oamsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oamsim/csvio.hpp"

namespace oamsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        if (!std::isfinite(d)) fail(line, "non-finite number '" + v + "'");
        return d;
    } catch (const std::invalid_argument&) {
        fail(line, "expected a number, got '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in integer '" + v + "'");
        return d;
    } catch (const std::invalid_argument&) {
        fail(line, "expected an integer, got '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, "integer out of range '" + v + "'");
    }
}

bool parse_on_off(const std::string& v, int line) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    fail(line, "expected on/off, got '" + v + "'");
}

std::vector<std::string> split_csv(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    bool shifts_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "pump" && section != "crystal" && section != "numerics" &&
                section != "schmidt" && section != "tomo" && section != "output")
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value, got '" + s + "'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (val.empty()) fail(line, "empty value for key '" + key + "'");
        if (section.empty()) fail(line, "key '" + key + "' outside any section");

        if (section == "pump") {
            if (key == "m") cfg.pump.m = static_cast<int>(parse_int(val, line));
            else if (key == "shift_ratio") { cfg.pump.shift_ratios = {parse_double(val, line)}; shifts_seen = true; }
            else if (key == "shift_ratios") {
                cfg.pump.shift_ratios.clear();
                for (const std::string& item : split_csv(val))
                    cfg.pump.shift_ratios.push_back(parse_double(item, line));
                shifts_seen = true;
                if (cfg.pump.shift_ratios.empty()) fail(line, "shift_ratios list is empty");
            }
            else if (key == "w_G") cfg.pump.w_G = parse_double(val, line);
            else if (key == "lambda_p") cfg.pump.lambda_p = parse_double(val, line);
            else fail(line, "unknown key '" + key + "' in [pump]");
        } else if (section == "crystal") {
            if (key == "L") cfg.crystal.L = parse_double(val, line);
            else if (key == "w_p") cfg.crystal.w_p = parse_double(val, line);
            else if (key == "w_s") cfg.crystal.w_s = parse_double(val, line);
            else if (key == "w_i") cfg.crystal.w_i = parse_double(val, line);
            else if (key == "lambda_s") cfg.crystal.lambda_s = parse_double(val, line);
            else if (key == "lambda_i") cfg.crystal.lambda_i = parse_double(val, line);
            else fail(line, "unknown key '" + key + "' in [crystal]");
        } else if (section == "numerics") {
            if (key == "grid_n") cfg.numerics.grid_n = static_cast<int>(parse_int(val, line));
            else if (key == "extent_factor") cfg.numerics.extent_factor = parse_double(val, line);
            else if (key == "l_min") cfg.numerics.l_min = static_cast<int>(parse_int(val, line));
            else if (key == "l_max") cfg.numerics.l_max = static_cast<int>(parse_int(val, line));
            else if (key == "sweep_l_min") cfg.numerics.sweep_l_min = static_cast<int>(parse_int(val, line));
            else if (key == "sweep_l_max") cfg.numerics.sweep_l_max = static_cast<int>(parse_int(val, line));
            else if (key == "conditional_ls") cfg.numerics.conditional_ls = static_cast<int>(parse_int(val, line));
            else fail(line, "unknown key '" + key + "' in [numerics]");
        } else if (section == "schmidt") {
            if (key == "alpha") cfg.schmidt.alpha = parse_double(val, line);
            else if (key == "beta") cfg.schmidt.beta = parse_double(val, line);
            else if (key == "b_convention") {
                try {
                    cfg.schmidt.b_convention = b_convention_from_string(val);
                } catch (const std::invalid_argument& e) {
                    fail(line, e.what());
                }
            }
            else fail(line, "unknown key '" + key + "' in [schmidt]");
        } else if (section == "tomo") {
            if (key == "l") cfg.tomo.l = static_cast<int>(parse_int(val, line));
            else if (key == "counts_per_setting") cfg.tomo.counts_per_setting = parse_int(val, line);
            else if (key == "noise") cfg.tomo.noise = parse_on_off(val, line);
            else if (key == "seed") cfg.tomo.seed = static_cast<std::uint64_t>(parse_int(val, line));
            else fail(line, "unknown key '" + key + "' in [tomo]");
        } else if (section == "output") {
            if (key == "directory") cfg.output.directory = val;
            else if (key == "formats") {
                cfg.output.formats = split_csv(val);
                for (const std::string& f : cfg.output.formats)
                    if (f != "csv" && f != "json") fail(line, "unknown output format '" + f + "'");
            }
            else fail(line, "unknown key '" + key + "' in [output]");
        }
    }
    (void)shifts_seen;
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void ExperimentConfig::validate() const {
    pump_spec().validate();
    crystal_params().validate();
    schmidt_params().validate();
    synthesis_grid();  // throws on bad n / extent
    crystal_grid();
    if (pump.shift_ratios.empty())
        throw std::invalid_argument("config: shift_ratios must not be empty");
    for (double r : pump.shift_ratios)
        if (r < 0) throw std::invalid_argument("config: shift ratios must be >= 0");
    auto check_range = [](int lo, int hi, const std::string& what) {
        if (lo > hi) throw std::invalid_argument("config: " + what + " range is empty");
        if (lo < -kMaxAzimuthalIndex || hi > kMaxAzimuthalIndex)
            throw std::invalid_argument("config: " + what + " range exceeds supported |l| <= " +
                                        std::to_string(kMaxAzimuthalIndex));
    };
    check_range(numerics.l_min, numerics.l_max, "l");
    check_range(numerics.sweep_l_min, numerics.sweep_l_max, "sweep l");
    if (numerics.conditional_ls < numerics.l_min || numerics.conditional_ls > numerics.l_max)
        throw std::invalid_argument("config: conditional_ls outside the l range");
    if (!(numerics.extent_factor >= 4.0))
        throw std::invalid_argument("config: extent_factor must be >= 4");
    if (tomo.l == 0) throw std::invalid_argument("config: tomo l must be nonzero");
    if (tomo.l < numerics.l_min || tomo.l > numerics.l_max || 0 < numerics.l_min ||
        0 > numerics.l_max)
        throw std::invalid_argument("config: tomo qubit indices {0, l} must lie in the l range");
    if (tomo.counts_per_setting <= 0)
        throw std::invalid_argument("config: counts_per_setting must be > 0");
    if (output.directory.empty())
        throw std::invalid_argument("config: output directory must not be empty");
    if (output.formats.empty())
        throw std::invalid_argument("config: output formats must not be empty");
}

CrystalParams ExperimentConfig::crystal_params() const {
    CrystalParams cp;
    cp.length = crystal.L;
    cp.lambda_p = pump.lambda_p;
    cp.lambda_s = crystal.lambda_s;
    cp.lambda_i = crystal.lambda_i;
    cp.w_p = crystal.w_p;
    cp.w_s = crystal.w_s;
    cp.w_i = crystal.w_i;
    return cp;
}

SchmidtParams ExperimentConfig::schmidt_params() const {
    SchmidtParams sp;
    sp.alpha = schmidt.alpha;
    sp.beta = schmidt.beta;
    sp.b_convention = schmidt.b_convention;
    return sp;
}

PumpSpec ExperimentConfig::pump_spec() const {
    PumpSpec spec;
    spec.m = pump.m;
    spec.shift_ratio = pump.shift_ratios.front();
    spec.w = pump.w_G;
    spec.lambda_p = pump.lambda_p;
    return spec;
}

Grid ExperimentConfig::synthesis_grid() const {
    return Grid(numerics.grid_n, numerics.extent_factor * pump.w_G);
}

Grid ExperimentConfig::crystal_grid() const {
    double w = std::max(crystal.w_p, std::max(crystal.w_s, crystal.w_i));
    return Grid(numerics.grid_n, numerics.extent_factor * w);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string s;
    s += "[pump]\n";
    s += "m = " + std::to_string(cfg.pump.m) + "\n";
    s += "shift_ratios = ";
    for (std::size_t i = 0; i < cfg.pump.shift_ratios.size(); ++i) {
        if (i) s += ",";
        s += format_double(cfg.pump.shift_ratios[i]);
    }
    s += "\n";
    s += "w_G = " + format_double(cfg.pump.w_G) + "\n";
    s += "lambda_p = " + format_double(cfg.pump.lambda_p) + "\n";
    s += "[crystal]\n";
    s += "L = " + format_double(cfg.crystal.L) + "\n";
    s += "w_p = " + format_double(cfg.crystal.w_p) + "\n";
    s += "w_s = " + format_double(cfg.crystal.w_s) + "\n";
    s += "w_i = " + format_double(cfg.crystal.w_i) + "\n";
    s += "lambda_s = " + format_double(cfg.crystal.lambda_s) + "\n";
    s += "lambda_i = " + format_double(cfg.crystal.lambda_i) + "\n";
    s += "[numerics]\n";
    s += "grid_n = " + std::to_string(cfg.numerics.grid_n) + "\n";
    s += "extent_factor = " + format_double(cfg.numerics.extent_factor) + "\n";
    s += "l_min = " + std::to_string(cfg.numerics.l_min) + "\n";
    s += "l_max = " + std::to_string(cfg.numerics.l_max) + "\n";
    s += "sweep_l_min = " + std::to_string(cfg.numerics.sweep_l_min) + "\n";
    s += "sweep_l_max = " + std::to_string(cfg.numerics.sweep_l_max) + "\n";
    s += "conditional_ls = " + std::to_string(cfg.numerics.conditional_ls) + "\n";
    s += "[schmidt]\n";
    s += "alpha = " + format_double(cfg.schmidt.alpha) + "\n";
    s += "beta = " + format_double(cfg.schmidt.beta) + "\n";
    s += "b_convention = " + to_string(cfg.schmidt.b_convention) + "\n";
    s += "[tomo]\n";
    s += "l = " + std::to_string(cfg.tomo.l) + "\n";
    s += "counts_per_setting = " + std::to_string(cfg.tomo.counts_per_setting) + "\n";
    s += std::string("noise = ") + (cfg.tomo.noise ? "on" : "off") + "\n";
    s += "seed = " + std::to_string(cfg.tomo.seed) + "\n";
    s += "[output]\n";
    s += "directory = " + cfg.output.directory + "\n";
    s += "formats = ";
    for (std::size_t i = 0; i < cfg.output.formats.size(); ++i) {
        if (i) s += ",";
        s += cfg.output.formats[i];
    }
    s += "\n";
    return s;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    // FNV-1a 64
    std::string s = serialize_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace oamsim
