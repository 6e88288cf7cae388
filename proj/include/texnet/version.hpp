#pragma once

namespace texnet {

inline constexpr const char* kVersion = "0.1.0";

} // namespace texnet
