#pragma once

namespace ginivar {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ginivar
