#pragma once

namespace ossolve {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ossolve
