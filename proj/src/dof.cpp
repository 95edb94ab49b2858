#include "attnkern/dof.hpp"

#include <algorithm>
#include <cmath>

#include "attnkern/attention.hpp"
#include "attnkern/linalg.hpp"
#include "attnkern/parallel.hpp"
#include "attnkern/rng.hpp"
#include "attnkern/simd/kernels.hpp"

namespace attnkern {

const char* gram_mode_name(GramMode mode) { return mode == GramMode::raw ? "raw" : "mean"; }

GramMode parse_gram_mode(const std::string& name) {
    if (name == "raw") return GramMode::raw;
    if (name == "mean") return GramMode::mean;
    throw argument_error("unknown gram normalization '" + name + "' (expected raw|mean)");
}

Matrix sample_inputs(const QKDump& dump, std::size_t layer, std::size_t head, std::size_t samples,
                     std::uint64_t seed) {
    if (layer >= dump.layers || head >= dump.heads)
        throw argument_error("sample_inputs: layer/head out of range");
    const Matrix& q = dump.queries_at(layer, head);
    const Matrix& k = dump.keys_at(layer, head);
    const std::size_t pool = q.rows() + k.rows();
    if (samples < 1 || samples > pool)
        throw argument_error("sample_inputs: J=" + std::to_string(samples) +
                             " exceeds pool of " + std::to_string(pool));

    Rng rng(seed);
    const auto picks = rng.sample_without_replacement(pool, samples);
    Matrix out(samples, dump.dim);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::size_t p = picks[i];
        const double* src = p < q.rows() ? q.row(p) : k.row(p - q.rows());
        std::copy(src, src + dump.dim, out.row(i));
    }
    return out;
}

GramMatrix gram(const Matrix& points, GramMode mode) {
    const std::size_t count = points.rows();
    const std::size_t dim = points.cols();
    if (count < 1 || dim < 1) throw argument_error("gram: empty point set");
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    const double norm = mode == GramMode::mean ? 1.0 / static_cast<double>(count) : 1.0;
    const auto& k = kern::table();

    GramMatrix g;
    g.mode = mode;
    g.entries = Matrix(count, count);
    Vector logits(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j <= i; ++j)
            logits[j] = k.dot(points.row(i), points.row(j), dim) * scale;
        double* row = g.entries.row(i);
        k.exp_shift(row, logits.data(), i + 1, 0.0);
        if (mode == GramMode::mean) k.scale(row, i + 1, norm);
        for (std::size_t j = 0; j < i; ++j) g.entries(j, i) = row[j];
    }
    return g;
}

double dof(const GramMatrix& g, double lambda) {
    if (!(lambda > 0.0)) throw argument_error("dof: lambda must be positive");
    const std::size_t count = g.size();
    Matrix shifted = symmetrized(g.entries);
    for (std::size_t i = 0; i < count; ++i) shifted(i, i) += lambda;
    const Cholesky chol(shifted);
    const double value = static_cast<double>(count) - lambda * chol.trace_inverse();
    return std::clamp(value, 0.0, static_cast<double>(count));
}

DoFReport dof_report(const QKDump& dump, double lambda, std::size_t samples, std::uint64_t seed,
                     GramMode mode, const std::string& model_id) {
    dump.validate();
    if (!(lambda > 0.0)) throw argument_error("dof_report: lambda must be positive");

    DoFReport report;
    report.model_id = model_id;
    report.lambda = lambda;
    report.samples = samples;
    report.seed = seed;
    report.mode = mode;
    report.layers = dump.layers;
    report.heads = dump.heads;
    report.per_head.assign(dump.layers * dump.heads, 0.0);
    report.per_layer_max.assign(dump.layers, 0.0);

    parallel_for(dump.layers * dump.heads, [&](std::size_t idx) {
        const std::size_t layer = idx / dump.heads;
        const std::size_t head = idx % dump.heads;
        const std::uint64_t head_seed = derive_seed(seed, layer, head);
        const Matrix points = sample_inputs(dump, layer, head, samples, head_seed);
        report.per_head[idx] = dof(gram(points, mode), lambda);
    });
    for (std::size_t layer = 0; layer < dump.layers; ++layer) {
        double best = report.per_head[layer * dump.heads];
        for (std::size_t head = 1; head < dump.heads; ++head)
            best = std::max(best, report.per_head[layer * dump.heads + head]);
        report.per_layer_max[layer] = best;
    }
    return report;
}

double round_half_even(double x) {
    const double floor_part = std::floor(x);
    const double frac = x - floor_part;
    if (frac > 0.5) return floor_part + 1.0;
    if (frac < 0.5) return floor_part;
    return std::fmod(floor_part, 2.0) == 0.0 ? floor_part : floor_part + 1.0;
}

Allocation allocate(const DoFReport& report, std::size_t budget, std::optional<std::size_t> clip) {
    if (budget < 1) throw argument_error("allocate: budget must be at least 1");
    if (clip && *clip < 1) throw argument_error("allocate: clip must be at least 1");
    if (report.per_layer_max.empty()) throw argument_error("allocate: empty report");
    double total = 0.0;
    for (double v : report.per_layer_max) {
        if (!(v > 0.0)) throw argument_error("allocate: per-layer DoF must be positive");
        total += v;
    }
    const double mean = total / static_cast<double>(report.per_layer_max.size());

    Allocation alloc;
    alloc.budget = budget;
    alloc.lambda = report.lambda;
    alloc.inverse_scale = static_cast<double>(budget) / mean;
    alloc.clip = clip;
    alloc.dims.reserve(report.per_layer_max.size());
    for (double v : report.per_layer_max) {
        auto dim = static_cast<std::size_t>(std::max(1.0, round_half_even(alloc.inverse_scale * v)));
        if (clip) dim = std::min(dim, *clip);
        alloc.dims.push_back(dim);
    }
    return alloc;
}

} // namespace attnkern
