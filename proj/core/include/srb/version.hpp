#pragma once

namespace srb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace srb
