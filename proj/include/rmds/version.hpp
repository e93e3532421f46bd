#pragma once

namespace rmds {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rmds
