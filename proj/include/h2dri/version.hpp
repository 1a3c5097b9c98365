#pragma once

namespace h2dri {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace h2dri
