#pragma once

namespace lcgc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lcgc
