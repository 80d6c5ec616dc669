#pragma once

namespace capeval {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace capeval
