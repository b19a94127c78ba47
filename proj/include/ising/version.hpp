#pragma once

namespace ising {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ising
