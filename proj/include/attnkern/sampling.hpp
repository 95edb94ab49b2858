#pragma once

#include <cstdint>

#include "attnkern/dof.hpp"
#include "attnkern/feature_map.hpp"
#include "attnkern/matrix.hpp"

namespace attnkern {

// Candidate feature locations z'_1..z'_P drawn from N(0, I_d), discretizing
// the PRF base measure. Scores stay empty until leverage_scores fills them.
struct CandidatePool {
    Matrix locations; // P x d
    Vector scores;    // length P once scored

    std::size_t count() const { return locations.rows(); }
    bool scored() const { return !scores.empty(); }
};

CandidatePool gaussian_pool(std::size_t pool_size, std::size_t dim, std::uint64_t seed);

// Plain PRF sampling: Z ~ N(0, I_d) i.i.d., alpha_m = 1.
FeatureMap sample_uniform(std::size_t count, std::size_t dim, std::uint64_t seed);

// Empirical ridge leverage scores approximating q_lambda:
// score_p = u_p^T (G + lambda I)^{-1} u_p / J with u_p = [phi(x_j; z'_p)]_j
// and G the data Gram in the requested normalization.
CandidatePool leverage_scores(const CandidatePool& pool, const Matrix& data, double lambda,
                              GramMode mode = GramMode::mean);

// Importance sampling from a scored pool: M indices drawn i.i.d. with
// probability proportional to score, alpha_m set to the density ratio of the
// target versus the uniform base measure over the pool.
FeatureMap sample_leverage(const CandidatePool& pool, std::size_t count, std::uint64_t seed);

} // namespace attnkern
