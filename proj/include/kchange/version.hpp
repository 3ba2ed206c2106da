#pragma once

namespace kchange {

inline constexpr const char *kVersion = "1.0.0";

} // namespace kchange
