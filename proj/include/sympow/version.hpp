#pragma once

namespace sympow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sympow
