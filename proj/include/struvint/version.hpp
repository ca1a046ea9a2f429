#pragma once

namespace struvint {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace struvint
