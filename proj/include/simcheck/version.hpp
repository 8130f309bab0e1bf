#pragma once

namespace simcheck {
inline constexpr const char* kVersion = "0.1.0";
}
