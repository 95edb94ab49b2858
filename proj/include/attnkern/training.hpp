#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attnkern/feature_map.hpp"
#include "attnkern/matrix.hpp"

namespace attnkern {

// Queries and keys of T sequences for one layer/head.
struct TrainBatch {
    std::vector<Matrix> queries; // T entries, each L x d
    std::vector<Matrix> keys;    // T entries, each L x d

    std::size_t sequences() const { return queries.size(); }
    void validate() const;
};

enum class LossKind { l2, softmax };

const char* loss_kind_name(LossKind kind);
LossKind parse_loss_kind(const std::string& name);

struct TrainConfig {
    LossKind loss = LossKind::l2;
    std::size_t steps = 200;
    std::size_t batch_size = 8;       // sequences per step; >= T means full batch
    double lr_locations = 0.02;       // learning rate for z_1..z_M
    double lr_log_weights = 0.2;      // learning rate for log alpha_1..alpha_M
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;
    bool causal = true;

    void validate() const;
};

// Mean over (query, key) pairs of (K - K_hat)^2. The causal flag restricts
// the pair sum to key positions at or before the query position.
double l2_loss(const TrainBatch& batch, const FeatureMap& fm, bool causal = true);

// Mean over query rows of the cross entropy between the softmax-attention row
// distribution p and its feature approximation p_hat, both with stabilized
// normalizers.
double softmax_loss(const TrainBatch& batch, const FeatureMap& fm, bool causal = true);

struct LossGrad {
    Matrix d_locations;    // M x d
    Vector d_log_weights;  // length M
    double loss = 0.0;
};

// Analytic gradients of the selected loss w.r.t. Z and log alpha, using
// d phi(x; z)/dz = phi(x; z) * x / d^{1/4}.
LossGrad loss_grad(const TrainBatch& batch, const FeatureMap& fm, LossKind kind,
                   bool causal = true);

struct TrainResult {
    FeatureMap fm;
    Vector trace; // per-step minibatch loss
};

// Adam over mini-batches of sequences; deterministic given cfg.seed. Layers
// and heads train independently, so callers may run instances in parallel.
TrainResult train_layer(const TrainBatch& batch, const FeatureMap& init, const TrainConfig& cfg);

} // namespace attnkern
