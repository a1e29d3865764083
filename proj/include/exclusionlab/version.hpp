#pragma once

namespace exclusionlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace exclusionlab
