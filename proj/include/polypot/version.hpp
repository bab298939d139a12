#pragma once

namespace polypot {

inline constexpr const char* kVersion = "0.1.0";

} // namespace polypot
