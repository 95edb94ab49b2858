#pragma once

#include <span>

#include "attnkern/feature_map.hpp"
#include "attnkern/matrix.hpp"

namespace attnkern {

// Normalizers below this are clamped and the stabilization flag is set. PRF
// features are strictly positive, so the clamp only guards underflow.
inline constexpr double kDenominatorFloor = 1e-12;

// prf_feature refuses exponents beyond this instead of saturating to inf.
inline constexpr double kExpArgLimit = 700.0;

struct AttentionOutput {
    Matrix values;           // L x d_v
    bool stabilized = false; // true if any row's normalizer was clamped
};

// K(x, y) = exp(x.y / sqrt(d)), the kernel implicit in softmax attention.
double attention_kernel(std::span<const double> x, std::span<const double> y);

// Exact causal softmax attention: y_i = sum_{j<=i} K(q_i,k_j) v_j / sum_{j'<=i} K(q_i,k_j').
// Rows are evaluated with a per-row max subtraction in the exponent; the shift
// cancels in the normalizer, so this is mathematically exact.
AttentionOutput softmax_attention(const Matrix& queries, const Matrix& keys, const Matrix& values);

// Positive random feature vector Phi(x) with Phi(x)_m = sqrt(alpha_m/M) * phi(x; z_m),
// phi(x; z) = exp(z.x / d^{1/4} - |x|^2 / (2 sqrt(d))). Every entry is positive.
Vector prf_feature(std::span<const double> x, const FeatureMap& fm);

// Phi(x_j) for every row of a point set, stacked as rows of an (n x M) matrix.
Matrix prf_feature_rows(const Matrix& points, const FeatureMap& fm);

// Phi(x).Phi(y) = (1/M) sum_m alpha_m phi(x;z_m) phi(y;z_m).
double approx_kernel(std::span<const double> x, std::span<const double> y, const FeatureMap& fm);

// Unweighted phi(x_j; z) over a whole point set: out[j] = exp(z.x_j / d^{1/4}
// - |x_j|^2 / (2 sqrt d)). Shared by the leverage-score and bound machinery.
void prf_phi_column(const Matrix& points, std::span<const double> location, double* out);

// Causal linear attention via the running sums A_i = sum Phi(k_j) and
// B_i = sum Phi(k_j) v_j^T, one left-to-right pass: O(L*M*d) time, O(M*d) memory.
AttentionOutput linear_attention(const Matrix& queries, const Matrix& keys, const Matrix& values,
                                 const FeatureMap& fm);

} // namespace attnkern
