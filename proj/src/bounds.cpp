#include "attnkern/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "attnkern/attention.hpp"
#include "attnkern/linalg.hpp"
#include "attnkern/parallel.hpp"
#include "attnkern/rng.hpp"
#include "attnkern/simd/kernels.hpp"

namespace attnkern {

namespace {

constexpr std::uint64_t kPoolTag = 0x706f6f6cULL;
constexpr std::uint64_t kTrialTag = 0x747269616cULL;
constexpr std::uint64_t kVectorTag = 0x766563ULL;

Matrix mean_normalized(const Matrix& raw) {
    Matrix out = raw;
    const double inv = 1.0 / static_cast<double>(raw.rows());
    kern::scale(out.data(), out.size(), inv);
    return out;
}

void check_common(const Matrix& data, const VerifyConfig& cfg) {
    if (data.rows() < 1 || data.cols() < 1) throw argument_error("verify: empty data");
    if (!(cfg.lambda > 0.0)) throw argument_error("verify: lambda must be positive");
    if (!(cfg.t > 0.0) || cfg.t > 3.0) throw argument_error("verify: t must lie in (0, 3]");
    if (!(cfg.delta > 0.0) || cfg.delta >= 1.0) throw argument_error("verify: delta must lie in (0, 1)");
    if (cfg.trials < 1) throw argument_error("verify: need at least one trial");
    if (cfg.nql_pool_size < 1) throw argument_error("verify: empty candidate pool");
    if (!(cfg.m_scale > 0.0)) throw argument_error("verify: m_scale must be positive");
}

FeatureMap draw_features(const Matrix& data, const VerifyConfig& cfg, const CandidatePool& scored,
                         std::size_t m_used, std::uint64_t trial_seed) {
    if (cfg.sampler == SamplerKind::uniform)
        return sample_uniform(m_used, data.cols(), trial_seed);
    return sample_leverage(scored, m_used, trial_seed);
}

// Scored pool for the sampler. Sized to cover M draws (sample_leverage
// requires M <= P); uniform trials don't need it.
CandidatePool sampler_pool(const Matrix& data, const VerifyConfig& cfg, std::size_t m_used) {
    if (cfg.sampler == SamplerKind::uniform) return CandidatePool{};
    const std::size_t size = std::max(cfg.nql_pool_size, m_used);
    CandidatePool pool = gaussian_pool(size, data.cols(), derive_seed(cfg.seed, kPoolTag, 1));
    return leverage_scores(pool, data, cfg.lambda, GramMode::mean);
}

} // namespace

double BoundConstants::c3(double alpha, double lambda) const {
    const double cap = std::max(op_norm, std::sqrt(op_norm));
    return std::sqrt(2.0) * (cap + std::pow(lambda, 1.0 - alpha));
}

BoundConstants bound_constants(const Matrix& data) {
    const Matrix raw = gram(data, GramMode::raw).entries;
    BoundConstants c;
    const std::size_t count = raw.rows();
    for (std::size_t i = 0; i < count; ++i) c.trace += raw(i, i);
    c.trace /= static_cast<double>(count);
    c.op_norm = symmetric_operator_norm(symmetrized(mean_normalized(raw)));
    return c;
}

const char* sampler_kind_name(SamplerKind kind) {
    return kind == SamplerKind::uniform ? "uniform" : "leverage";
}

SamplerKind parse_sampler_kind(const std::string& name) {
    if (name == "uniform") return SamplerKind::uniform;
    if (name == "leverage") return SamplerKind::leverage;
    throw argument_error("unknown sampler '" + name + "' (expected uniform|leverage)");
}

std::size_t lemma2_threshold(double n, double t, double delta, bool main_text_form) {
    if (!(n > 0.0)) throw argument_error("lemma2_threshold: N must be positive");
    if (!(t > 0.0) || t > 3.0) throw argument_error("lemma2_threshold: t must lie in (0, 3]");
    if (!(delta > 0.0) || delta > 1.0)
        throw argument_error("lemma2_threshold: delta must lie in (0, 1]");
    const double tt = main_text_form ? t : t * t;
    const double raw = (4.0 * n / tt) * std::log(64.0 * n / (delta * tt));
    if (!std::isfinite(raw)) throw numerical_error("lemma2_threshold: overflow");
    return static_cast<std::size_t>(std::max(1.0, std::ceil(raw)));
}

double empirical_nql(const Matrix& data, const CandidatePool& pool, double lambda,
                     NqlDensity density) {
    if (pool.count() < 1) throw argument_error("empirical_nql: empty pool");
    if (data.cols() != pool.locations.cols())
        throw argument_error("empirical_nql: data/pool dimension mismatch");
    if (!(lambda > 0.0)) throw argument_error("empirical_nql: lambda must be positive");

    const std::size_t count = data.rows();
    const std::size_t pool_size = pool.count();

    // u_p = [phi(x_j; z'_p)]_j, and the pool-induced operator
    // Sigma_pool = U U^T / (P J) standing in for Sigma.
    Matrix u(pool_size, count); // row p = u_p
    for (std::size_t p = 0; p < pool_size; ++p)
        prf_phi_column(data, {pool.locations.row(p), data.cols()}, u.row(p));

    Matrix pool_operator(count, count);
    {
        using RowMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
        using MutMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
        RowMap um(u.data(), static_cast<Eigen::Index>(pool_size), static_cast<Eigen::Index>(count));
        MutMap gm(pool_operator.data(), static_cast<Eigen::Index>(count),
                  static_cast<Eigen::Index>(count));
        gm.noalias() = um.transpose() * um;
        gm *= 1.0 / (static_cast<double>(pool_size) * static_cast<double>(count));
    }
    for (std::size_t i = 0; i < count; ++i) pool_operator(i, i) += lambda;
    const Cholesky chol(pool_operator);

    Vector scores(pool_size);
    for (std::size_t p = 0; p < pool_size; ++p)
        scores[p] = chol.quadratic_form_inverse(u.row(p)) / static_cast<double>(count);

    if (density == NqlDensity::uniform) return kern::max_value(scores.data(), pool_size);
    // q proportional to the scores equalizes every ratio score_p / q(z'_p) at
    // the mean score, which is exactly the pool operator's DoF.
    return kern::sum(scores.data(), pool_size) / static_cast<double>(pool_size);
}

Matrix approx_gram(const Matrix& data, const FeatureMap& fm) {
    fm.validate();
    if (data.cols() != fm.dim) throw argument_error("approx_gram: dimension mismatch");
    const std::size_t count = data.rows();
    const std::size_t m_count = fm.count();
    const std::size_t block = 2048;
    const double log_m = std::log(static_cast<double>(m_count));

    Matrix out(count, count);
    using MutMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    MutMap gm(out.data(), static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
    Matrix rows(std::min(block, m_count), count);
    for (std::size_t start = 0; start < m_count; start += block) {
        const std::size_t width = std::min(block, m_count - start);
        for (std::size_t b = 0; b < width; ++b) {
            double* row = rows.row(b);
            prf_phi_column(data, {fm.locations.row(start + b), fm.dim}, row);
            kern::scale(row, count, std::exp(0.5 * (fm.log_weights[start + b] - log_m)));
        }
        using RowMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
        RowMap wm(rows.data(), static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(count));
        if (start == 0)
            gm.noalias() = wm.transpose() * wm;
        else
            gm.noalias() += wm.transpose() * wm;
    }
    return out;
}

double kernel_l2_error(const Matrix& data, const FeatureMap& fm) {
    const Matrix exact = gram(data, GramMode::raw).entries;
    const Matrix approx = approx_gram(data, fm);
    const std::size_t n = exact.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = exact.data()[i] - approx.data()[i];
        acc += diff * diff;
    }
    return std::sqrt(acc) / static_cast<double>(exact.rows());
}

double operator_concentration(const Matrix& data, const FeatureMap& fm, double lambda) {
    if (!(lambda > 0.0)) throw argument_error("operator_concentration: lambda must be positive");
    const Matrix sigma = mean_normalized(gram(data, GramMode::raw).entries);
    const Matrix sigma_fm = mean_normalized(approx_gram(data, fm));
    const Matrix whitener = symmetric_shifted_power(symmetrized(sigma), lambda, -0.5);

    Matrix diff(sigma.rows(), sigma.cols());
    for (std::size_t i = 0; i < sigma.size(); ++i)
        diff.data()[i] = sigma.data()[i] - sigma_fm.data()[i];
    const Matrix whitened = matmul(matmul(whitener, diff), whitener);
    return symmetric_operator_norm(symmetrized(whitened));
}

VerifyResult verify_theorem1_i(const Matrix& data, const VerifyConfig& cfg) {
    check_common(data, cfg);
    const std::size_t count = data.rows();
    const Matrix exact = gram(data, GramMode::raw).entries;

    VerifyResult result;
    result.constants = bound_constants(data);

    const CandidatePool nql_pool =
        gaussian_pool(cfg.nql_pool_size, data.cols(), derive_seed(cfg.seed, kPoolTag, 0));
    const NqlDensity density =
        cfg.sampler == SamplerKind::uniform ? NqlDensity::uniform : NqlDensity::leverage;
    result.nql = empirical_nql(data, nql_pool, cfg.lambda, density);
    result.m_required = lemma2_threshold(result.nql, cfg.t, cfg.delta, cfg.main_text_threshold);
    result.m_used = static_cast<std::size_t>(
        std::max(1.0, std::ceil(cfg.m_scale * static_cast<double>(result.m_required))));

    const CandidatePool scored = sampler_pool(data, cfg, result.m_used);
    const double rhs = cfg.lambda * cfg.t / cfg.delta * result.constants.c1() +
                       cfg.t * cfg.t * result.constants.c2();

    result.records.resize(cfg.trials);
    parallel_for(cfg.trials, [&](std::size_t trial) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, kTrialTag, trial);
        const FeatureMap fm = draw_features(data, cfg, scored, result.m_used, trial_seed);
        const Matrix approx = approx_gram(data, fm);
        double acc = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i) {
            const double diff = exact.data()[i] - approx.data()[i];
            acc += diff * diff;
        }
        const double lhs = acc / (static_cast<double>(count) * static_cast<double>(count));
        BoundTrialRecord rec;
        rec.lambda = cfg.lambda;
        rec.t = cfg.t;
        rec.delta = cfg.delta;
        rec.m_required = result.m_required;
        rec.m_used = result.m_used;
        rec.lhs = lhs;
        rec.rhs = rhs;
        rec.violated = lhs > rhs;
        rec.seed = trial_seed;
        result.records[trial] = rec;
    });

    std::size_t violations = 0;
    for (const auto& rec : result.records) violations += rec.violated ? 1 : 0;
    result.violation_rate = static_cast<double>(violations) / static_cast<double>(cfg.trials);
    return result;
}

VerifyResult verify_theorem1_ii(const Matrix& data, const Vector& v, const VerifyConfig& cfg) {
    check_common(data, cfg);
    if (cfg.alpha != 0.0 && cfg.alpha != 0.5)
        throw argument_error("verify: alpha must be 0 or 0.5");
    const std::size_t count = data.rows();
    const Matrix exact = gram(data, GramMode::raw).entries;

    Vector test_vector = v;
    if (test_vector.empty()) {
        Rng rng(derive_seed(cfg.seed, kVectorTag));
        test_vector.resize(count);
        rng.fill_gaussian(test_vector.data(), count);
        const double norm = std::sqrt(kern::squared_norm(test_vector.data(), count));
        kern::scale(test_vector.data(), count, 1.0 / norm);
    } else if (test_vector.size() != count) {
        throw argument_error("verify: test vector length must match data rows");
    }

    VerifyResult result;
    result.constants = bound_constants(data);

    const CandidatePool nql_pool =
        gaussian_pool(cfg.nql_pool_size, data.cols(), derive_seed(cfg.seed, kPoolTag, 0));
    const NqlDensity density =
        cfg.sampler == SamplerKind::uniform ? NqlDensity::uniform : NqlDensity::leverage;
    result.nql = empirical_nql(data, nql_pool, cfg.lambda, density);
    result.m_required = lemma2_threshold(result.nql, cfg.t, cfg.delta, cfg.main_text_threshold);
    result.m_used = static_cast<std::size_t>(
        std::max(1.0, std::ceil(cfg.m_scale * static_cast<double>(result.m_required))));

    const CandidatePool scored = sampler_pool(data, cfg, result.m_used);

    // |v| (alpha = 0) or |(Sigma+lambda I)^{1/2} v| (alpha = 1/2), in L2(rho_hat).
    double weighted_norm;
    if (cfg.alpha == 0.0) {
        weighted_norm = std::sqrt(kern::squared_norm(test_vector.data(), count) /
                                  static_cast<double>(count));
    } else {
        const Matrix sigma = symmetrized(mean_normalized(exact));
        const Matrix power = symmetric_shifted_power(sigma, cfg.lambda, cfg.alpha);
        Vector tmp(count, 0.0);
        for (std::size_t i = 0; i < count; ++i)
            tmp[i] = kern::dot(power.row(i), test_vector.data(), count);
        weighted_norm = std::sqrt(kern::squared_norm(tmp.data(), count) / static_cast<double>(count));
    }
    const double rhs = result.constants.c3(cfg.alpha, cfg.lambda) * cfg.t * weighted_norm;

    result.records.resize(cfg.trials);
    parallel_for(cfg.trials, [&](std::size_t trial) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, kTrialTag, trial);
        const FeatureMap fm = draw_features(data, cfg, scored, result.m_used, trial_seed);
        const Matrix approx = approx_gram(data, fm);
        double acc = 0.0;
        Vector row_diff(count);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < count; ++j)
                row_diff[j] = approx(i, j) - exact(i, j);
            const double wi = kern::dot(row_diff.data(), test_vector.data(), count) /
                              static_cast<double>(count);
            acc += wi * wi;
        }
        const double lhs = std::sqrt(acc / static_cast<double>(count));
        BoundTrialRecord rec;
        rec.lambda = cfg.lambda;
        rec.t = cfg.t;
        rec.delta = cfg.delta;
        rec.m_required = result.m_required;
        rec.m_used = result.m_used;
        rec.lhs = lhs;
        rec.rhs = rhs;
        rec.violated = lhs > rhs;
        rec.seed = trial_seed;
        result.records[trial] = rec;
    });

    std::size_t violations = 0;
    for (const auto& rec : result.records) violations += rec.violated ? 1 : 0;
    result.violation_rate = static_cast<double>(violations) / static_cast<double>(cfg.trials);
    return result;
}

} // namespace attnkern
