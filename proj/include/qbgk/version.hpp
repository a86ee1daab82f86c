#pragma once

namespace qbgk {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qbgk
