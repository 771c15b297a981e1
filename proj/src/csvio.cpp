#include "oamsim/csvio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "oamsim/version.hpp"

namespace oamsim {

std::string format_double(double v) {
    // shortest representation that round-trips, stable across runs
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    return buf;
}

std::string metadata_header(std::uint64_t cfg_hash,
                            const std::vector<std::pair<std::string, std::string>>& extra) {
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx", static_cast<unsigned long long>(cfg_hash));
    std::string s;
    s += std::string("# oamsim ") + kVersion + "\n";
    s += std::string("# config_hash=") + hash_hex + "\n";
    for (const auto& [k, v] : extra) s += "# " + k + "=" + v + "\n";
    return s;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw std::runtime_error("cannot create directory '" + path + "': " + ec.message());
}

} // namespace oamsim
