#include "attnkern/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "attnkern/attention.hpp"
#include "attnkern/rng.hpp"
#include "attnkern/simd/kernels.hpp"

namespace attnkern {

void TrainBatch::validate() const {
    if (queries.empty() || queries.size() != keys.size())
        throw argument_error("TrainBatch: need matching query/key sequence lists");
    const std::size_t len = queries.front().rows();
    const std::size_t dim = queries.front().cols();
    if (len < 1 || dim < 1) throw argument_error("TrainBatch: empty sequence");
    for (std::size_t t = 0; t < queries.size(); ++t) {
        if (queries[t].rows() != len || queries[t].cols() != dim || keys[t].rows() != len ||
            keys[t].cols() != dim)
            throw argument_error("TrainBatch: inconsistent shapes at sequence " + std::to_string(t));
        if (!queries[t].all_finite() || !keys[t].all_finite())
            throw argument_error("TrainBatch: non-finite entries at sequence " + std::to_string(t));
    }
}

void TrainConfig::validate() const {
    if (!(lr_locations > 0.0) || !(lr_log_weights > 0.0))
        throw argument_error("TrainConfig: learning rates must be positive");
    if (batch_size < 1) throw argument_error("TrainConfig: batch size must be at least 1");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0))
        throw argument_error("TrainConfig: moment decays must lie in [0, 1)");
    if (!(epsilon > 0.0)) throw argument_error("TrainConfig: epsilon must be positive");
}

const char* loss_kind_name(LossKind kind) { return kind == LossKind::l2 ? "l2" : "softmax"; }

LossKind parse_loss_kind(const std::string& name) {
    if (name == "l2") return LossKind::l2;
    if (name == "softmax") return LossKind::softmax;
    throw argument_error("unknown loss '" + name + "' (expected l2|softmax)");
}

namespace {

struct SequenceEval {
    Matrix phi_q; // L x M
    Matrix phi_k; // L x M
};

// Accumulates d(loss)/dZ and d(loss)/d(log alpha) given the per-pair
// coefficient c = d(loss)/d(K_hat). Uses
//   dK_hat/d(log alpha_m) = Phi(q)_m Phi(k)_m,
//   dK_hat/dz_m           = Phi(q)_m Phi(k)_m (q + k) / d^{1/4}.
class GradAccumulator {
public:
    GradAccumulator(const FeatureMap& fm, bool want_grad)
        : want_grad_(want_grad), quarter_root_(std::pow(static_cast<double>(fm.dim), 0.25)) {
        if (want_grad_) {
            d_locations_ = Matrix(fm.count(), fm.dim);
            d_log_weights_.assign(fm.count(), 0.0);
            direction_.resize(fm.dim);
        }
    }

    void add_pair(double coef, const double* q, const double* k, const double* phi_q,
                  const double* phi_k, std::size_t m_count, std::size_t dim) {
        if (!want_grad_) return;
        const auto& kt = kern::table();
        for (std::size_t j = 0; j < dim; ++j) direction_[j] = (q[j] + k[j]) / quarter_root_;
        for (std::size_t m = 0; m < m_count; ++m) {
            const double w = coef * phi_q[m] * phi_k[m];
            d_log_weights_[m] += w;
            kt.axpy(w, direction_.data(), d_locations_.row(m), dim);
        }
    }

    void scale(double c) {
        if (!want_grad_) return;
        kern::scale(d_locations_.data(), d_locations_.size(), c);
        kern::scale(d_log_weights_.data(), d_log_weights_.size(), c);
    }

    Matrix take_locations() { return std::move(d_locations_); }
    Vector take_log_weights() { return std::move(d_log_weights_); }

private:
    bool want_grad_;
    double quarter_root_;
    Matrix d_locations_;
    Vector d_log_weights_;
    Vector direction_;
};

// Shared evaluation core for both losses; computes the loss and, when
// requested, the analytic gradient in the same sweep.
LossGrad evaluate(const TrainBatch& batch, const FeatureMap& fm, LossKind kind, bool causal,
                  bool want_grad) {
    batch.validate();
    fm.validate();
    const std::size_t dim = batch.queries.front().cols();
    if (dim != fm.dim) throw argument_error("loss: batch dimension does not match feature map");

    const std::size_t seq_count = batch.sequences();
    const std::size_t len = batch.queries.front().rows();
    const std::size_t m_count = fm.count();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    const auto& kt = kern::table();

    const std::size_t pairs_per_seq = causal ? len * (len + 1) / 2 : len * len;
    const double pair_norm = 1.0 / static_cast<double>(seq_count * pairs_per_seq);
    const double row_norm = 1.0 / static_cast<double>(seq_count * len);

    GradAccumulator grad(fm, want_grad);
    double loss = 0.0;
    Vector logits(len), probs(len), khat(len);
    for (std::size_t t = 0; t < seq_count; ++t) {
        const Matrix& q = batch.queries[t];
        const Matrix& key = batch.keys[t];
        const Matrix phi_q = prf_feature_rows(q, fm);
        const Matrix phi_k = prf_feature_rows(key, fm);

        for (std::size_t l = 0; l < len; ++l) {
            const std::size_t span = causal ? l + 1 : len;
            for (std::size_t j = 0; j < span; ++j) {
                logits[j] = kt.dot(q.row(l), key.row(j), dim) * scale;
                khat[j] = kt.dot(phi_q.row(l), phi_k.row(j), m_count);
            }
            if (kind == LossKind::l2) {
                for (std::size_t j = 0; j < span; ++j) {
                    const double exact = std::exp(logits[j]);
                    if (!std::isfinite(exact))
                        throw numerical_error("l2_loss: attention kernel overflow");
                    const double residual = exact - khat[j];
                    loss += pair_norm * residual * residual;
                    grad.add_pair(-2.0 * pair_norm * residual, q.row(l), key.row(j),
                                  phi_q.row(l), phi_k.row(j), m_count, dim);
                }
            } else {
                const double row_max = kt.max_value(logits.data(), span);
                kt.exp_shift(probs.data(), logits.data(), span, -row_max);
                const double p_total = kt.sum(probs.data(), span);
                const double khat_total = kt.sum(khat.data(), span);
                if (!(khat_total > 0.0) || !std::isfinite(khat_total))
                    throw numerical_error("softmax_loss: approximate row normalizer underflow");
                double cross_entropy = std::log(khat_total);
                for (std::size_t j = 0; j < span; ++j) {
                    const double p = probs[j] / p_total;
                    double coef = row_norm / khat_total;
                    if (p > 0.0) {
                        if (!(khat[j] > 0.0))
                            throw numerical_error("softmax_loss: approximate kernel underflow");
                        cross_entropy -= p * std::log(khat[j]);
                        coef -= row_norm * p / khat[j];
                    }
                    grad.add_pair(coef, q.row(l), key.row(j), phi_q.row(l), phi_k.row(j),
                                  m_count, dim);
                }
                loss += row_norm * cross_entropy;
            }
        }
    }

    LossGrad out;
    out.loss = loss;
    if (want_grad) {
        out.d_locations = grad.take_locations();
        out.d_log_weights = grad.take_log_weights();
        for (std::size_t i = 0; i < out.d_locations.size(); ++i)
            if (!std::isfinite(out.d_locations.data()[i]))
                throw numerical_error("loss_grad: non-finite gradient at z entry " +
                                      std::to_string(i));
        for (std::size_t m = 0; m < out.d_log_weights.size(); ++m)
            if (!std::isfinite(out.d_log_weights[m]))
                throw numerical_error("loss_grad: non-finite gradient at log weight " +
                                      std::to_string(m));
    }
    return out;
}

} // namespace

double l2_loss(const TrainBatch& batch, const FeatureMap& fm, bool causal) {
    return evaluate(batch, fm, LossKind::l2, causal, false).loss;
}

double softmax_loss(const TrainBatch& batch, const FeatureMap& fm, bool causal) {
    return evaluate(batch, fm, LossKind::softmax, causal, false).loss;
}

LossGrad loss_grad(const TrainBatch& batch, const FeatureMap& fm, LossKind kind, bool causal) {
    return evaluate(batch, fm, kind, causal, true);
}

TrainResult train_layer(const TrainBatch& batch, const FeatureMap& init, const TrainConfig& cfg) {
    batch.validate();
    init.validate();
    cfg.validate();

    TrainResult result;
    result.fm = init;
    if (cfg.steps == 0) return result;

    const std::size_t seq_count = batch.sequences();
    const std::size_t m_count = init.count();
    const std::size_t z_size = init.locations.size();
    const std::size_t take = std::min(cfg.batch_size, seq_count);

    Matrix m_z(m_count, init.dim), v_z(m_count, init.dim);
    Vector m_w(m_count, 0.0), v_w(m_count, 0.0);

    Rng order_rng(derive_seed(cfg.seed, 0x6f72646572ULL));
    std::vector<std::size_t> order(seq_count);
    std::iota(order.begin(), order.end(), 0);
    std::size_t cursor = seq_count; // forces a shuffle before the first step

    result.trace.reserve(cfg.steps);
    for (std::size_t step = 1; step <= cfg.steps; ++step) {
        TrainBatch sub;
        sub.queries.reserve(take);
        sub.keys.reserve(take);
        for (std::size_t i = 0; i < take; ++i) {
            if (cursor >= seq_count) {
                for (std::size_t j = seq_count; j-- > 1;)
                    std::swap(order[j], order[order_rng.next_below(j + 1)]);
                cursor = 0;
            }
            const std::size_t pick = order[cursor++];
            sub.queries.push_back(batch.queries[pick]);
            sub.keys.push_back(batch.keys[pick]);
        }

        LossGrad lg = loss_grad(sub, result.fm, cfg.loss, cfg.causal);
        result.trace.push_back(lg.loss);

        const double corr1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
        const double corr2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
        double* z = result.fm.locations.data();
        const double* gz = lg.d_locations.data();
        for (std::size_t i = 0; i < z_size; ++i) {
            double& m1 = m_z.data()[i];
            double& m2 = v_z.data()[i];
            m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * gz[i];
            m2 = cfg.beta2 * m2 + (1.0 - cfg.beta2) * gz[i] * gz[i];
            z[i] -= cfg.lr_locations * (m1 / corr1) / (std::sqrt(m2 / corr2) + cfg.epsilon);
        }
        for (std::size_t m = 0; m < m_count; ++m) {
            const double g = lg.d_log_weights[m];
            m_w[m] = cfg.beta1 * m_w[m] + (1.0 - cfg.beta1) * g;
            v_w[m] = cfg.beta2 * v_w[m] + (1.0 - cfg.beta2) * g * g;
            result.fm.log_weights[m] -=
                cfg.lr_log_weights * (m_w[m] / corr1) / (std::sqrt(v_w[m] / corr2) + cfg.epsilon);
        }
    }
    return result;
}

} // namespace attnkern
