#pragma once

namespace morrey {

inline constexpr const char* kToolName = "morrey";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace morrey
