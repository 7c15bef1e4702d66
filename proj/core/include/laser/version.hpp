#pragma once

namespace laser {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace laser
