#pragma once

namespace wonc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wonc
