#pragma once

#define TECHFOLIO_VERSION "0.1.0"

namespace techfolio {
inline constexpr const char* kVersion = TECHFOLIO_VERSION;
}
