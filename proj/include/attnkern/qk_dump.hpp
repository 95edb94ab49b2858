#pragma once

#include <cstdint>
#include <vector>

#include "attnkern/matrix.hpp"

namespace attnkern {

// Per-layer, per-head query/key tensors collected from a model forward pass.
// On disk the payload is 32-bit; in memory everything is promoted to double.
struct QKDump {
    std::size_t layers = 0;    // S
    std::size_t heads = 0;     // H
    std::size_t dim = 0;       // d
    std::size_t sequences = 0; // T
    std::size_t seq_len = 0;   // L
    std::vector<Matrix> queries; // indexed [s * heads + h], each (T*L) x d
    std::vector<Matrix> keys;

    std::size_t head_index(std::size_t layer, std::size_t head) const {
        return layer * heads + head;
    }
    const Matrix& queries_at(std::size_t layer, std::size_t head) const {
        return queries[head_index(layer, head)];
    }
    const Matrix& keys_at(std::size_t layer, std::size_t head) const {
        return keys[head_index(layer, head)];
    }

    void validate() const {
        if (layers < 1 || heads < 1 || dim < 1 || sequences < 1 || seq_len < 1)
            throw argument_error("QKDump: all shape fields must be at least 1");
        if (queries.size() != layers * heads || keys.size() != layers * heads)
            throw argument_error("QKDump: tensor count does not match layers*heads");
        const std::size_t tokens = sequences * seq_len;
        for (std::size_t i = 0; i < queries.size(); ++i) {
            if (queries[i].rows() != tokens || queries[i].cols() != dim ||
                keys[i].rows() != tokens || keys[i].cols() != dim)
                throw argument_error("QKDump: tensor shape mismatch at head block " +
                                     std::to_string(i));
            if (!queries[i].all_finite() || !keys[i].all_finite())
                throw argument_error("QKDump: non-finite entries at head block " +
                                     std::to_string(i));
        }
    }
};

} // namespace attnkern
