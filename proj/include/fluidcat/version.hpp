#pragma once

namespace fluidcat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fluidcat
