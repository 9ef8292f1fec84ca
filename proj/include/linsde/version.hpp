#pragma once

namespace linsde {

inline constexpr const char* kVersion = "linsde-0.1.0";

} // namespace linsde
