#pragma once

#include <cstdint>
#include <vector>

#include "attnkern/feature_map.hpp"
#include "attnkern/matrix.hpp"
#include "attnkern/sampling.hpp"

namespace attnkern {

// All population objects are replaced by their empirical J-sample proxies:
// rho by the empirical measure of the data rows, Sigma by the mean-normalized
// Gram G/J, and L2 norms by their sample versions. The harness checks the
// shape and slack of the bounds on these proxies.

struct BoundConstants {
    double trace = 0.0;   // tr Sigma_hat = tr(G)/J
    double op_norm = 0.0; // |Sigma_hat|_op = lambda_max(G/J)

    double c1() const { return 5.0 * trace; }
    double c2() const { return trace * op_norm; }
    double c3(double alpha, double lambda) const; // sqrt2 * (max{op, sqrt(op)} + lambda^{1-alpha})
};

BoundConstants bound_constants(const Matrix& data);

struct BoundTrialRecord {
    double lambda = 0.0;
    double t = 0.0;
    double delta = 0.0;
    std::size_t m_required = 0;
    std::size_t m_used = 0;
    double lhs = 0.0; // the quantity the theorem bounds (squared norm for item i)
    double rhs = 0.0;
    bool violated = false;
    std::uint64_t seed = 0;
};

enum class SamplerKind { uniform, leverage };

const char* sampler_kind_name(SamplerKind kind);
SamplerKind parse_sampler_kind(const std::string& name);

enum class NqlDensity { uniform, leverage };

// Sample-size threshold M >= (4 N / t^2) log(64 N / (delta t^2)), the
// appendix (proved) form. main_text_form swaps in the main-text variant
// (4 N / t) log(64 N / (delta t)) for comparison.
std::size_t lemma2_threshold(double n, double t, double delta, bool main_text_form = false);

// sup_z (1/q(z)) <phi(.;z), (Sigma+lambda I)^{-1} phi(.;z)> with the sup taken
// over a finite candidate pool and Sigma replaced by the pool-induced
// operator. With the leverage density the ratios equalize and the value is
// the pool operator's degrees of freedom; with q == 1 it is the max score.
double empirical_nql(const Matrix& data, const CandidatePool& pool, double lambda,
                     NqlDensity density);

// |K - K_hat| in L2(rho_hat x rho_hat): Frobenius norm of the difference of
// the two J x J kernel matrices, divided by J.
double kernel_l2_error(const Matrix& data, const FeatureMap& fm);

// K_hat Gram of a feature map on the data rows (raw entries), accumulated in
// feature blocks.
Matrix approx_gram(const Matrix& data, const FeatureMap& fm);

// |(Sigma+lambda I)^{-1/2} (Sigma - Sigma_hat_fm) (Sigma+lambda I)^{-1/2}|_op
// on the mean-normalized proxies, via symmetric eigensolve.
double operator_concentration(const Matrix& data, const FeatureMap& fm, double lambda);

struct VerifyConfig {
    double lambda = 0.1;
    double t = 0.5;
    double delta = 0.1;
    std::size_t trials = 100;
    SamplerKind sampler = SamplerKind::uniform;
    std::size_t nql_pool_size = 1024; // candidates for the N estimate (and leverage pool)
    double m_scale = 1.0;             // multiplies the threshold, for paired runs
    bool main_text_threshold = false;
    double alpha = 0.0; // item (ii) only: 0 or 1/2 (1/2 needs an eigensolve)
    std::uint64_t seed = 0;
};

struct VerifyResult {
    std::vector<BoundTrialRecord> records;
    double violation_rate = 0.0;
    double nql = 0.0;
    std::size_t m_required = 0;
    std::size_t m_used = 0;
    BoundConstants constants;
};

// Item (i): lhs = |K - K_hat|^2 in L2(rho_hat x rho_hat) against
// rhs = lambda t delta^{-1} C1 + t^2 C2, with features re-sampled per trial at
// the Lemma-2 threshold. Expected violation rate <= 2 delta.
VerifyResult verify_theorem1_i(const Matrix& data, const VerifyConfig& cfg);

// Item (ii): lhs = |(G_hat - G) v / J|_2 / sqrt(J) against
// rhs = C3(alpha, lambda) t |(Sigma+lambda I)^alpha v| in L2(rho_hat).
// Empty v selects a random unit vector. Expected violation rate <= delta.
VerifyResult verify_theorem1_ii(const Matrix& data, const Vector& v, const VerifyConfig& cfg);

} // namespace attnkern
