#include "io/binary.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace attnkern::io {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap, const char* what) {
    if (b != 0 && a > cap / b)
        throw resource_error(std::string(what) + ": declared size exceeds cap of " +
                             std::to_string(cap) + " bytes");
    const std::uint64_t product = a * b;
    if (product > cap)
        throw resource_error(std::string(what) + ": declared size exceeds cap of " +
                             std::to_string(cap) + " bytes");
    return product;
}

std::string read_file(const std::string& path, std::uint64_t max_bytes) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) throw io_error("cannot stat '" + path + "': " + ec.message());
    if (size > max_bytes)
        throw resource_error("'" + path + "': file size " + std::to_string(size) +
                             " exceeds cap of " + std::to_string(max_bytes) + " bytes");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::string buffer(static_cast<std::size_t>(size), '\0');
    in.read(buffer.data(), static_cast<std::streamsize>(size));
    if (!in) throw io_error("short read from '" + path + "'");
    return buffer;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open '" + tmp + "' for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw io_error("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw io_error("cannot rename '" + tmp + "' to '" + path + "'");
}

} // namespace attnkern::io
