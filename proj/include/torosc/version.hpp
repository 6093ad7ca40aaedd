#pragma once

namespace torosc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace torosc
