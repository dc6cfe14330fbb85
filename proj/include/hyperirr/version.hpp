#pragma once

namespace hyperirr {

inline constexpr const char* kVersion = "0.1.0";

} // namespace hyperirr
