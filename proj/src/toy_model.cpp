#include "attnkern/toy_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "attnkern/attention.hpp"
#include "attnkern/rng.hpp"
#include "attnkern/simd/kernels.hpp"

namespace attnkern {

void ToyConfig::validate() const {
    if (layers < 1 || heads < 1 || head_dim < 1 || seq_len < 1 || sequences < 1)
        throw argument_error("ToyConfig: all shape fields must be at least 1");
    if (!(weight_scale >= 0.0) || !std::isfinite(weight_scale))
        throw argument_error("ToyConfig: invalid weight scale");
    if (mode != InputMode::gaussian && mode_param < 1)
        throw argument_error("ToyConfig: mode parameter must be at least 1");
    if (mode == InputMode::low_rank && mode_param > width())
        throw argument_error("ToyConfig: subspace rank exceeds model width");
}

const char* input_mode_name(InputMode mode) {
    switch (mode) {
    case InputMode::gaussian: return "gaussian";
    case InputMode::low_rank: return "lowrank";
    case InputMode::clustered: return "clustered";
    }
    return "unknown";
}

void parse_input_mode(const std::string& text, InputMode& mode, std::size_t& param) {
    if (text == "gaussian") {
        mode = InputMode::gaussian;
        param = 0;
        return;
    }
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (head != "lowrank" && head != "clustered")
        throw argument_error("unknown input mode '" + text +
                             "' (expected gaussian|lowrank:<r>|clustered:<k>)");
    if (colon == std::string::npos)
        throw argument_error("input mode '" + head + "' needs a parameter, e.g. " + head + ":2");
    const long value = std::strtol(text.c_str() + colon + 1, nullptr, 10);
    if (value < 1) throw argument_error("input mode parameter must be a positive integer");
    mode = head == "lowrank" ? InputMode::low_rank : InputMode::clustered;
    param = static_cast<std::size_t>(value);
}

namespace {

constexpr std::uint64_t kQueryTag = 0x71;
constexpr std::uint64_t kKeyTag = 0x6b;
constexpr std::uint64_t kValueTag = 0x76;
constexpr std::uint64_t kOutTag = 0x6f;
constexpr std::uint64_t kTokenTag = 0x746f6b;
constexpr std::uint64_t kBasisTag = 0xba515;
constexpr std::uint64_t kCenterTag = 0xc1a5;

Matrix random_matrix(std::size_t rows, std::size_t cols, double scale, std::uint64_t seed) {
    Matrix out(rows, cols);
    Rng rng(seed);
    rng.fill_gaussian(out.data(), out.size());
    kern::scale(out.data(), out.size(), scale);
    return out;
}

// Orthonormal rows spanning a random r-dimensional subspace, by Gram-Schmidt
// on Gaussian draws.
Matrix random_orthonormal_basis(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    Matrix basis(rank, dim);
    Rng rng(seed);
    for (std::size_t i = 0; i < rank; ++i) {
        for (;;) {
            rng.fill_gaussian(basis.row(i), dim);
            for (std::size_t j = 0; j < i; ++j)
                kern::axpy(-kern::dot(basis.row(i), basis.row(j), dim), basis.row(j),
                           basis.row(i), dim);
            const double norm = std::sqrt(kern::squared_norm(basis.row(i), dim));
            if (norm > 1e-8) {
                kern::scale(basis.row(i), dim, 1.0 / norm);
                break;
            }
        }
    }
    return basis;
}

// One sequence of input tokens, L x width.
Matrix make_tokens(const ToyConfig& cfg, const Matrix& basis, const Matrix& centers,
                   std::uint64_t seed) {
    const std::size_t width = cfg.width();
    Matrix tokens(cfg.seq_len, width);
    Rng rng(seed);
    switch (cfg.mode) {
    case InputMode::gaussian:
        rng.fill_gaussian(tokens.data(), tokens.size());
        break;
    case InputMode::low_rank: {
        // Coefficients rescaled so token energy matches the Gaussian mode.
        const double gain =
            std::sqrt(static_cast<double>(width) / static_cast<double>(cfg.mode_param));
        Vector coeff(cfg.mode_param);
        for (std::size_t l = 0; l < cfg.seq_len; ++l) {
            rng.fill_gaussian(coeff.data(), coeff.size());
            for (std::size_t r = 0; r < cfg.mode_param; ++r)
                kern::axpy(gain * coeff[r], basis.row(r), tokens.row(l), width);
        }
        break;
    }
    case InputMode::clustered: {
        Vector noise(width);
        for (std::size_t l = 0; l < cfg.seq_len; ++l) {
            const std::size_t pick = rng.next_below(cfg.mode_param);
            rng.fill_gaussian(noise.data(), width);
            double* row = tokens.row(l);
            for (std::size_t j = 0; j < width; ++j) row[j] = centers(pick, j) + 0.1 * noise[j];
        }
        break;
    }
    }
    return tokens;
}

// y = W x for a row-major (out_dim x in_dim) weight matrix.
void project(const Matrix& weight, const double* x, double* y) {
    for (std::size_t i = 0; i < weight.rows(); ++i)
        y[i] = kern::dot(weight.row(i), x, weight.cols());
}

} // namespace

QKDump generate(const ToyConfig& cfg) {
    cfg.validate();
    const std::size_t width = cfg.width();
    const std::size_t dim = cfg.head_dim;
    const std::size_t len = cfg.seq_len;
    const double proj_scale = cfg.weight_scale / std::sqrt(static_cast<double>(dim));
    const double out_scale = cfg.weight_scale / std::sqrt(static_cast<double>(width));

    std::vector<Matrix> w_query, w_key, w_value, w_out;
    for (std::size_t s = 0; s < cfg.layers; ++s) {
        for (std::size_t h = 0; h < cfg.heads; ++h) {
            const std::size_t slot = s * cfg.heads + h;
            w_query.push_back(random_matrix(dim, width, proj_scale, derive_seed(cfg.seed, kQueryTag, slot)));
            w_key.push_back(random_matrix(dim, width, proj_scale, derive_seed(cfg.seed, kKeyTag, slot)));
            w_value.push_back(random_matrix(dim, width, proj_scale, derive_seed(cfg.seed, kValueTag, slot)));
        }
        w_out.push_back(random_matrix(width, width, out_scale, derive_seed(cfg.seed, kOutTag, s)));
    }

    Matrix basis, centers;
    if (cfg.mode == InputMode::low_rank)
        basis = random_orthonormal_basis(width, cfg.mode_param, derive_seed(cfg.seed, kBasisTag));
    if (cfg.mode == InputMode::clustered)
        centers = random_matrix(cfg.mode_param, width, 1.0, derive_seed(cfg.seed, kCenterTag));

    QKDump dump;
    dump.layers = cfg.layers;
    dump.heads = cfg.heads;
    dump.dim = dim;
    dump.sequences = cfg.sequences;
    dump.seq_len = len;
    dump.queries.assign(cfg.layers * cfg.heads, Matrix(cfg.sequences * len, dim));
    dump.keys.assign(cfg.layers * cfg.heads, Matrix(cfg.sequences * len, dim));

    Matrix q(len, dim), k(len, dim), v(len, dim), concat(len, width);
    Vector mixed(width);
    for (std::size_t t = 0; t < cfg.sequences; ++t) {
        Matrix x = make_tokens(cfg, basis, centers, derive_seed(cfg.seed, kTokenTag, t));
        for (std::size_t s = 0; s < cfg.layers; ++s) {
            for (std::size_t h = 0; h < cfg.heads; ++h) {
                const std::size_t slot = s * cfg.heads + h;
                for (std::size_t l = 0; l < len; ++l) {
                    project(w_query[slot], x.row(l), q.row(l));
                    project(w_key[slot], x.row(l), k.row(l));
                    project(w_value[slot], x.row(l), v.row(l));
                }
                std::copy(q.data(), q.data() + q.size(), dump.queries[slot].row(t * len));
                std::copy(k.data(), k.data() + k.size(), dump.keys[slot].row(t * len));

                const AttentionOutput att = softmax_attention(q, k, v);
                for (std::size_t l = 0; l < len; ++l)
                    std::copy(att.values.row(l), att.values.row(l) + dim,
                              concat.row(l) + h * dim);
            }
            for (std::size_t l = 0; l < len; ++l) {
                project(w_out[s], concat.row(l), mixed.data());
                kern::axpy(1.0, mixed.data(), x.row(l), width);
            }
        }
    }
    return dump;
}

} // namespace attnkern
