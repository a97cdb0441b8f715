#pragma once

namespace pkern {

inline constexpr const char* kVersion = "0.3.0";

} // namespace pkern
