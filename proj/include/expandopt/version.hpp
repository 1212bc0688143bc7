#pragma once

namespace expandopt {

inline constexpr const char* kVersion = "expandopt 0.1.0";

}  // namespace expandopt
