#pragma once

#include <cstdint>
#include <string>

#include "attnkern/io/common.hpp"
#include "attnkern/qk_dump.hpp"

namespace attnkern {

// QKDF v1: magic "QKDF", u32 version, u32 S H d T L (little-endian), then for
// each layer and head: queries as (T*L)*d float32 row-major, then keys. File
// length is exactly 28 + S*H*2*(T*L)*d*4 bytes (28-byte header).

// Atomic write (temp file + rename). Payload is truncated to float32.
void write_qkdf(const std::string& path, const QKDump& dump);

// Validates magic, version, and exact length before allocating anything
// proportional to the declared sizes; declared payloads beyond max_bytes are
// a resource error.
QKDump read_qkdf(const std::string& path, std::uint64_t max_bytes = kDefaultIoCap);

} // namespace attnkern
