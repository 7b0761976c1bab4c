#pragma once

namespace distsel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace distsel
