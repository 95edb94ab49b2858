#pragma once

// Little-endian encode/decode helpers shared by the binary file formats, plus
// atomic whole-file read/write.

#include <bit>
#include <cstdint>
#include <string>

#include "attnkern/errors.hpp"

namespace attnkern::io {

inline void append_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline void append_u64(std::string& out, std::uint64_t v) {
    append_u32(out, static_cast<std::uint32_t>(v & 0xffffffffULL));
    append_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline void append_f32(std::string& out, float v) { append_u32(out, std::bit_cast<std::uint32_t>(v)); }
inline void append_f64(std::string& out, double v) { append_u64(out, std::bit_cast<std::uint64_t>(v)); }

// Sequential reader with byte-offset diagnostics.
class Cursor {
public:
    Cursor(const std::string& buffer, const std::string& label)
        : buffer_(buffer), label_(label) {}

    std::size_t offset() const { return offset_; }
    std::size_t remaining() const { return buffer_.size() - offset_; }

    void require(std::size_t bytes, const char* what) const {
        if (remaining() < bytes)
            throw format_error(label_ + ": truncated while reading " + what + " at byte offset " +
                               std::to_string(offset_));
    }

    std::uint32_t read_u32(const char* what) {
        require(4, what);
        const auto* p = reinterpret_cast<const unsigned char*>(buffer_.data()) + offset_;
        offset_ += 4;
        return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
               (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    }

    std::uint64_t read_u64(const char* what) {
        const std::uint64_t lo = read_u32(what);
        const std::uint64_t hi = read_u32(what);
        return lo | (hi << 32);
    }

    float read_f32(const char* what) { return std::bit_cast<float>(read_u32(what)); }
    double read_f64(const char* what) { return std::bit_cast<double>(read_u64(what)); }

    void read_magic(const char* expected) {
        require(4, "magic");
        if (buffer_.compare(offset_, 4, expected) != 0)
            throw format_error(label_ + ": bad magic at byte offset " + std::to_string(offset_) +
                               " (expected \"" + expected + "\")");
        offset_ += 4;
    }

private:
    const std::string& buffer_;
    std::string label_;
    std::size_t offset_ = 0;
};

// a * b, guarded against exceeding cap (or overflowing).
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap, const char* what);

std::string read_file(const std::string& path, std::uint64_t max_bytes);
void write_file_atomic(const std::string& path, const std::string& bytes);

} // namespace attnkern::io
