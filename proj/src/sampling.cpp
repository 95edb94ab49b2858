#include "attnkern/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "attnkern/attention.hpp"
#include "attnkern/linalg.hpp"
#include "attnkern/rng.hpp"
#include "attnkern/simd/kernels.hpp"

namespace attnkern {

CandidatePool gaussian_pool(std::size_t pool_size, std::size_t dim, std::uint64_t seed) {
    if (pool_size < 1 || dim < 1) throw argument_error("gaussian_pool: empty shape");
    CandidatePool pool;
    pool.locations = Matrix(pool_size, dim);
    Rng rng(seed);
    rng.fill_gaussian(pool.locations.data(), pool.locations.size());
    return pool;
}

FeatureMap sample_uniform(std::size_t count, std::size_t dim, std::uint64_t seed) {
    if (count < 1 || dim < 1) throw argument_error("sample_uniform: empty shape");
    FeatureMap fm;
    fm.dim = dim;
    fm.locations = Matrix(count, dim);
    fm.log_weights.assign(count, 0.0);
    Rng rng(seed);
    rng.fill_gaussian(fm.locations.data(), fm.locations.size());
    return fm;
}

CandidatePool leverage_scores(const CandidatePool& pool, const Matrix& data, double lambda,
                              GramMode mode) {
    if (pool.count() < 1) throw argument_error("leverage_scores: empty pool");
    if (data.cols() != pool.locations.cols())
        throw argument_error("leverage_scores: data/pool dimension mismatch");
    if (!(lambda > 0.0)) throw argument_error("leverage_scores: lambda must be positive");

    const std::size_t count = data.rows();
    Matrix shifted = symmetrized(gram(data, mode).entries);
    for (std::size_t i = 0; i < count; ++i) shifted(i, i) += lambda;
    const Cholesky chol(shifted);

    CandidatePool scored = pool;
    scored.scores.assign(pool.count(), 0.0);
    Vector phi(count);
    for (std::size_t p = 0; p < pool.count(); ++p) {
        prf_phi_column(data, {pool.locations.row(p), data.cols()}, phi.data());
        const double q = chol.quadratic_form_inverse(phi.data()) / static_cast<double>(count);
        scored.scores[p] = std::max(q, 0.0);
    }
    return scored;
}

FeatureMap sample_leverage(const CandidatePool& pool, std::size_t count, std::uint64_t seed) {
    if (!pool.scored()) throw argument_error("sample_leverage: pool has no scores");
    if (count < 1 || count > pool.count())
        throw argument_error("sample_leverage: need 1 <= M <= pool size");

    const std::size_t pool_size = pool.count();
    Vector cdf(pool_size);
    double total = 0.0;
    for (std::size_t p = 0; p < pool_size; ++p) {
        if (!(pool.scores[p] >= 0.0) || !std::isfinite(pool.scores[p]))
            throw argument_error("sample_leverage: invalid score at candidate " + std::to_string(p));
        total += pool.scores[p];
        cdf[p] = total;
    }
    if (!(total > 0.0)) throw argument_error("sample_leverage: all scores are zero");

    FeatureMap fm;
    fm.dim = pool.locations.cols();
    fm.locations = Matrix(count, fm.dim);
    fm.log_weights.assign(count, 0.0);
    Rng rng(seed);
    const double mean_score = total / static_cast<double>(pool_size);
    for (std::size_t m = 0; m < count; ++m) {
        const double u = rng.uniform01() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t pick = std::min(static_cast<std::size_t>(it - cdf.begin()), pool_size - 1);
        const double* src = pool.locations.row(pick);
        std::copy(src, src + fm.dim, fm.locations.row(m));
        // alpha = (mean of scores) / score: the density ratio of the uniform
        // pool measure against the score-proportional sampling measure.
        fm.log_weights[m] = std::log(mean_score) - std::log(pool.scores[pick]);
    }
    return fm;
}

} // namespace attnkern
