#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attnkern/feature_map.hpp"
#include "attnkern/io/common.hpp"

namespace attnkern {

// Per-layer, per-head feature maps of one distilled model.
struct FeatureCheckpoint {
    std::size_t dim = 0;
    std::vector<std::vector<FeatureMap>> layers; // [layer][head]

    void validate() const;
};

// LAFC v1: magic "LAFC", u32 version, u32 S d; per layer: u32 H, then per
// head: u32 M, Z as M*d float64, log weights as M float64. Little-endian.
void write_lafc(const std::string& path, const FeatureCheckpoint& ckpt);
FeatureCheckpoint read_lafc(const std::string& path, std::uint64_t max_bytes = kDefaultIoCap);

} // namespace attnkern
