#pragma once

namespace triplekit {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace triplekit
