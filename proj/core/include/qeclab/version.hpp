#pragma once

namespace qeclab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qeclab
