#pragma once

namespace rmexit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rmexit
