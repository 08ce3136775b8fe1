#pragma once

namespace nystrompca {

inline constexpr const char* kVersion = "1.0.0";

} // namespace nystrompca
