#pragma once

namespace peakdomain {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace peakdomain
