#include "attnkern/io/qkdf.hpp"

#include "io/binary.hpp"

namespace attnkern {

void write_qkdf(const std::string& path, const QKDump& dump) {
    dump.validate();
    const std::size_t tokens = dump.sequences * dump.seq_len;
    std::string bytes;
    bytes.reserve(28 + dump.layers * dump.heads * 2 * tokens * dump.dim * 4);
    bytes += "QKDF";
    io::append_u32(bytes, 1);
    io::append_u32(bytes, static_cast<std::uint32_t>(dump.layers));
    io::append_u32(bytes, static_cast<std::uint32_t>(dump.heads));
    io::append_u32(bytes, static_cast<std::uint32_t>(dump.dim));
    io::append_u32(bytes, static_cast<std::uint32_t>(dump.sequences));
    io::append_u32(bytes, static_cast<std::uint32_t>(dump.seq_len));
    for (std::size_t slot = 0; slot < dump.layers * dump.heads; ++slot) {
        const Matrix& q = dump.queries[slot];
        const Matrix& k = dump.keys[slot];
        for (std::size_t i = 0; i < q.size(); ++i)
            io::append_f32(bytes, static_cast<float>(q.data()[i]));
        for (std::size_t i = 0; i < k.size(); ++i)
            io::append_f32(bytes, static_cast<float>(k.data()[i]));
    }
    io::write_file_atomic(path, bytes);
}

QKDump read_qkdf(const std::string& path, std::uint64_t max_bytes) {
    const std::string buffer = io::read_file(path, max_bytes);
    io::Cursor cur(buffer, "QKDF '" + path + "'");
    cur.read_magic("QKDF");
    const std::uint32_t version = cur.read_u32("version");
    if (version != 1)
        throw format_error("QKDF '" + path + "': unsupported version " + std::to_string(version) +
                           " at byte offset 4");

    QKDump dump;
    dump.layers = cur.read_u32("layer count");
    dump.heads = cur.read_u32("head count");
    dump.dim = cur.read_u32("head dimension");
    dump.sequences = cur.read_u32("sequence count");
    dump.seq_len = cur.read_u32("sequence length");
    if (dump.layers < 1 || dump.heads < 1 || dump.dim < 1 || dump.sequences < 1 || dump.seq_len < 1)
        throw format_error("QKDF '" + path + "': zero shape field in header");

    // Exact length check before any payload-sized allocation.
    const std::uint64_t tokens = io::checked_mul(dump.sequences, dump.seq_len, max_bytes, "QKDF");
    const std::uint64_t per_tensor = io::checked_mul(tokens, dump.dim * 4ULL, max_bytes, "QKDF");
    const std::uint64_t heads_total = io::checked_mul(dump.layers, dump.heads, max_bytes, "QKDF");
    const std::uint64_t payload =
        io::checked_mul(heads_total, io::checked_mul(per_tensor, 2, max_bytes, "QKDF"), max_bytes,
                        "QKDF");
    const std::uint64_t expected = 28 + payload;
    if (buffer.size() != expected)
        throw format_error("QKDF '" + path + "': expected " + std::to_string(expected) +
                           " bytes from header, file has " + std::to_string(buffer.size()) +
                           " (diverges at byte offset " +
                           std::to_string(std::min<std::uint64_t>(expected, buffer.size())) + ")");

    dump.queries.assign(dump.layers * dump.heads, Matrix(tokens, dump.dim));
    dump.keys.assign(dump.layers * dump.heads, Matrix(tokens, dump.dim));
    for (std::size_t slot = 0; slot < dump.layers * dump.heads; ++slot) {
        Matrix& q = dump.queries[slot];
        Matrix& k = dump.keys[slot];
        for (std::size_t i = 0; i < q.size(); ++i) q.data()[i] = cur.read_f32("query payload");
        for (std::size_t i = 0; i < k.size(); ++i) k.data()[i] = cur.read_f32("key payload");
    }
    try {
        dump.validate();
    } catch (const argument_error& e) {
        throw format_error("QKDF '" + path + "': invalid payload: " + e.what());
    }
    return dump;
}

} // namespace attnkern
