#pragma once

namespace wh {

inline constexpr const char* kToolName = "weaverhard";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace wh
