#pragma once

namespace gtht {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gtht
