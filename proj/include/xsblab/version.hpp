#pragma once

namespace xsblab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace xsblab
