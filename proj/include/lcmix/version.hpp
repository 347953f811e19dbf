#pragma once

namespace lcmix {

inline constexpr const char* kVersion = "0.1.0";

} // namespace lcmix
