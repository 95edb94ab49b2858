#include "attnkern/attention.hpp"

#include <cmath>
#include <string>

#include "attnkern/simd/kernels.hpp"

namespace attnkern {

namespace {

void check_finite(std::span<const double> x, const char* what) {
    for (double v : x)
        if (!std::isfinite(v)) throw argument_error(std::string(what) + ": non-finite input");
}

void check_attention_shapes(const Matrix& q, const Matrix& k, const Matrix& v) {
    if (q.rows() < 1 || q.cols() < 1) throw argument_error("attention: empty query matrix");
    if (q.rows() != k.rows() || q.cols() != k.cols())
        throw argument_error("attention: query/key shape mismatch");
    if (v.rows() != q.rows()) throw argument_error("attention: value row count mismatch");
    if (v.cols() < 1) throw argument_error("attention: empty value matrix");
}

// Shared PRF evaluation core. Assumes the feature map was validated by the
// caller; folds sqrt(alpha_m / M) into the exponent so a single exp covers
// weight, normalization, and phi.
struct PrfEvaluator {
    const FeatureMap& fm;
    double quarter_root;
    double half_inv_sqrt;
    double half_log_count;

    explicit PrfEvaluator(const FeatureMap& map)
        : fm(map),
          quarter_root(std::pow(static_cast<double>(map.dim), 0.25)),
          half_inv_sqrt(0.5 / std::sqrt(static_cast<double>(map.dim))),
          half_log_count(0.5 * std::log(static_cast<double>(map.count()))) {}

    void evaluate(const double* x, double* out) const {
        const auto& k = kern::table();
        const std::size_t m_count = fm.count();
        const double base = -k.squared_norm(x, fm.dim) * half_inv_sqrt - half_log_count;
        for (std::size_t m = 0; m < m_count; ++m) {
            const double e = k.dot(fm.locations.row(m), x, fm.dim) / quarter_root + base +
                             0.5 * fm.log_weights[m];
            if (e > kExpArgLimit)
                throw numerical_error("prf_feature: exponent overflow at feature m=" +
                                      std::to_string(m));
            out[m] = e;
        }
        k.exp_shift(out, out, m_count, 0.0);
    }
};

} // namespace

double attention_kernel(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        throw argument_error("attention_kernel: dimension mismatch");
    check_finite(x, "attention_kernel");
    check_finite(y, "attention_kernel");
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
    return std::exp(kern::dot(x.data(), y.data(), x.size()) * scale);
}

AttentionOutput softmax_attention(const Matrix& queries, const Matrix& keys, const Matrix& values) {
    check_attention_shapes(queries, keys, values);
    const std::size_t len = queries.rows();
    const std::size_t dim = queries.cols();
    const std::size_t dv = values.cols();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    const auto& k = kern::table();

    AttentionOutput out;
    out.values = Matrix(len, dv);
    Vector logits(len);
    Vector weights(len);
    for (std::size_t i = 0; i < len; ++i) {
        const double* qi = queries.row(i);
        for (std::size_t j = 0; j <= i; ++j)
            logits[j] = k.dot(qi, keys.row(j), dim) * scale;
        const double row_max = k.max_value(logits.data(), i + 1);
        k.exp_shift(weights.data(), logits.data(), i + 1, -row_max);
        const double total = k.sum(weights.data(), i + 1);
        double* yi = out.values.row(i);
        for (std::size_t j = 0; j <= i; ++j)
            k.axpy(weights[j] / total, values.row(j), yi, dv);
    }
    return out;
}

Vector prf_feature(std::span<const double> x, const FeatureMap& fm) {
    fm.validate();
    if (x.size() != fm.dim) throw argument_error("prf_feature: input dimension mismatch");
    check_finite(x, "prf_feature");
    Vector phi(fm.count());
    PrfEvaluator(fm).evaluate(x.data(), phi.data());
    return phi;
}

Matrix prf_feature_rows(const Matrix& points, const FeatureMap& fm) {
    fm.validate();
    if (points.cols() != fm.dim)
        throw argument_error("prf_feature_rows: point dimension mismatch");
    if (!points.all_finite()) throw argument_error("prf_feature_rows: non-finite input");
    const PrfEvaluator prf(fm);
    Matrix out(points.rows(), fm.count());
    for (std::size_t j = 0; j < points.rows(); ++j) prf.evaluate(points.row(j), out.row(j));
    return out;
}

double approx_kernel(std::span<const double> x, std::span<const double> y, const FeatureMap& fm) {
    const Vector px = prf_feature(x, fm);
    const Vector py = prf_feature(y, fm);
    return kern::dot(px.data(), py.data(), px.size());
}

void prf_phi_column(const Matrix& points, std::span<const double> location, double* out) {
    if (location.size() != points.cols())
        throw argument_error("prf_phi_column: location dimension mismatch");
    const std::size_t count = points.rows();
    const std::size_t dim = points.cols();
    const double quarter_root = std::pow(static_cast<double>(dim), 0.25);
    const double half_inv_sqrt = 0.5 / std::sqrt(static_cast<double>(dim));
    const auto& k = kern::table();
    for (std::size_t j = 0; j < count; ++j) {
        out[j] = k.dot(location.data(), points.row(j), dim) / quarter_root -
                 k.squared_norm(points.row(j), dim) * half_inv_sqrt;
    }
    k.exp_shift(out, out, count, 0.0);
}

AttentionOutput linear_attention(const Matrix& queries, const Matrix& keys, const Matrix& values,
                                 const FeatureMap& fm) {
    check_attention_shapes(queries, keys, values);
    fm.validate();
    if (fm.dim != queries.cols()) throw argument_error("linear_attention: feature map dim mismatch");
    if (!queries.all_finite() || !keys.all_finite())
        throw argument_error("linear_attention: non-finite input");

    const std::size_t len = queries.rows();
    const std::size_t dv = values.cols();
    const std::size_t m_count = fm.count();
    const PrfEvaluator prf(fm);
    const auto& k = kern::table();

    AttentionOutput out;
    out.values = Matrix(len, dv);
    Vector key_sum(m_count, 0.0); // A_i
    Matrix kv_sum(m_count, dv);   // B_i
    Vector phi(m_count);
    for (std::size_t i = 0; i < len; ++i) {
        prf.evaluate(keys.row(i), phi.data());
        k.axpy(1.0, phi.data(), key_sum.data(), m_count);
        for (std::size_t m = 0; m < m_count; ++m)
            k.axpy(phi[m], values.row(i), kv_sum.row(m), dv);

        prf.evaluate(queries.row(i), phi.data());
        double denom = k.dot(key_sum.data(), phi.data(), m_count);
        if (denom < kDenominatorFloor) {
            denom = kDenominatorFloor;
            out.stabilized = true;
        }
        double* yi = out.values.row(i);
        for (std::size_t m = 0; m < m_count; ++m)
            k.axpy(phi[m], kv_sum.row(m), yi, dv);
        k.scale(yi, dv, 1.0 / denom);
    }
    return out;
}

} // namespace attnkern
