#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oamsim {

// Shortest-roundtrip decimal formatting (printf %.17g trimmed); all file
// output goes through this so identical runs produce identical bytes.
std::string format_double(double v);

// '#'-prefixed metadata block: tool version, config hash and the extra
// key=value lines, in a fixed order.
std::string metadata_header(std::uint64_t cfg_hash,
                            const std::vector<std::pair<std::string, std::string>>& extra);

void write_text_file(const std::string& path, const std::string& content);

void ensure_directory(const std::string& path);

} // namespace oamsim
