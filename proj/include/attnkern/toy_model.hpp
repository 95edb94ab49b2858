#pragma once

#include <cstdint>
#include <string>

#include "attnkern/qk_dump.hpp"

namespace attnkern {

enum class InputMode { gaussian, low_rank, clustered };

// Attention-only stack (no MLP, no layer norm): per layer, per-head causal
// softmax attention on projected tokens, concatenated, output-projected, and
// added back residually. Queries/keys are recorded before attention.
struct ToyConfig {
    std::size_t layers = 2;    // S
    std::size_t heads = 2;     // H
    std::size_t head_dim = 8;  // d
    std::size_t seq_len = 32;  // L
    std::size_t sequences = 4; // T
    std::uint64_t seed = 1;
    double weight_scale = 0.5; // sigma_w; projections ~ N(0, sigma_w^2 / d)
    InputMode mode = InputMode::gaussian;
    std::size_t mode_param = 2; // subspace rank r, or cluster count k

    std::size_t width() const { return heads * head_dim; }
    void validate() const;
};

const char* input_mode_name(InputMode mode);

// Accepts "gaussian", "lowrank:<r>", "clustered:<k>".
void parse_input_mode(const std::string& text, InputMode& mode, std::size_t& param);

QKDump generate(const ToyConfig& cfg);

} // namespace attnkern
