#pragma once

namespace oamsim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace oamsim
