#pragma once

#include <cstdint>

namespace attnkern {

// Default cap on bytes any reader will allocate for a single file.
inline constexpr std::uint64_t kDefaultIoCap = 1ULL << 30;

} // namespace attnkern
