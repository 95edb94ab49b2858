#include "attnkern/io/lafc.hpp"

#include "io/binary.hpp"

namespace attnkern {

void FeatureCheckpoint::validate() const {
    if (dim < 1) throw argument_error("FeatureCheckpoint: dimension must be at least 1");
    if (layers.empty()) throw argument_error("FeatureCheckpoint: no layers");
    for (const auto& layer : layers) {
        if (layer.empty()) throw argument_error("FeatureCheckpoint: layer with no heads");
        for (const auto& fm : layer) {
            fm.validate();
            if (fm.dim != dim)
                throw argument_error("FeatureCheckpoint: feature map dim mismatch");
        }
    }
}

void write_lafc(const std::string& path, const FeatureCheckpoint& ckpt) {
    ckpt.validate();
    std::string bytes;
    bytes += "LAFC";
    io::append_u32(bytes, 1);
    io::append_u32(bytes, static_cast<std::uint32_t>(ckpt.layers.size()));
    io::append_u32(bytes, static_cast<std::uint32_t>(ckpt.dim));
    for (const auto& layer : ckpt.layers) {
        io::append_u32(bytes, static_cast<std::uint32_t>(layer.size()));
        for (const auto& fm : layer) {
            io::append_u32(bytes, static_cast<std::uint32_t>(fm.count()));
            for (std::size_t i = 0; i < fm.locations.size(); ++i)
                io::append_f64(bytes, fm.locations.data()[i]);
            for (double w : fm.log_weights) io::append_f64(bytes, w);
        }
    }
    io::write_file_atomic(path, bytes);
}

FeatureCheckpoint read_lafc(const std::string& path, std::uint64_t max_bytes) {
    const std::string buffer = io::read_file(path, max_bytes);
    io::Cursor cur(buffer, "LAFC '" + path + "'");
    cur.read_magic("LAFC");
    const std::uint32_t version = cur.read_u32("version");
    if (version != 1)
        throw format_error("LAFC '" + path + "': unsupported version " + std::to_string(version) +
                           " at byte offset 4");

    FeatureCheckpoint ckpt;
    const std::uint32_t layer_count = cur.read_u32("layer count");
    ckpt.dim = cur.read_u32("dimension");
    if (layer_count < 1 || ckpt.dim < 1)
        throw format_error("LAFC '" + path + "': zero shape field in header");

    ckpt.layers.resize(layer_count);
    for (auto& layer : ckpt.layers) {
        const std::uint32_t head_count = cur.read_u32("head count");
        if (head_count < 1)
            throw format_error("LAFC '" + path + "': zero head count at byte offset " +
                               std::to_string(cur.offset() - 4));
        layer.resize(head_count);
        for (auto& fm : layer) {
            const std::uint32_t m_count = cur.read_u32("feature count");
            if (m_count < 1)
                throw format_error("LAFC '" + path + "': zero feature count at byte offset " +
                                   std::to_string(cur.offset() - 4));
            const std::uint64_t z_bytes =
                io::checked_mul(io::checked_mul(m_count, ckpt.dim, max_bytes, "LAFC"), 8,
                                max_bytes, "LAFC");
            cur.require(static_cast<std::size_t>(z_bytes + m_count * 8ULL), "feature payload");
            fm.dim = ckpt.dim;
            fm.locations = Matrix(m_count, ckpt.dim);
            for (std::size_t i = 0; i < fm.locations.size(); ++i)
                fm.locations.data()[i] = cur.read_f64("feature locations");
            fm.log_weights.resize(m_count);
            for (double& w : fm.log_weights) w = cur.read_f64("log weights");
        }
    }
    if (cur.remaining() != 0)
        throw format_error("LAFC '" + path + "': " + std::to_string(cur.remaining()) +
                           " trailing bytes at byte offset " + std::to_string(cur.offset()));
    try {
        ckpt.validate();
    } catch (const argument_error& e) {
        throw format_error("LAFC '" + path + "': invalid payload: " + e.what());
    }
    return ckpt;
}

} // namespace attnkern
