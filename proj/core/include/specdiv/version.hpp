#pragma once

namespace specdiv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace specdiv
