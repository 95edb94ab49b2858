#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attnkern/matrix.hpp"
#include "attnkern/qk_dump.hpp"

namespace attnkern {

// raw keeps the bare kernel Gram [K(x_i, x_j)]; mean divides by J, the
// conventional empirical proxy for the integral operator. DoF values scale
// accordingly, so reports record the mode.
enum class GramMode { raw, mean };

const char* gram_mode_name(GramMode mode);
GramMode parse_gram_mode(const std::string& name);

struct GramMatrix {
    GramMode mode = GramMode::raw;
    Matrix entries; // J x J, symmetric

    std::size_t size() const { return entries.rows(); }
};

// J rows drawn uniformly without replacement from the pooled queries and keys
// of one head. Deterministic given the seed.
Matrix sample_inputs(const QKDump& dump, std::size_t layer, std::size_t head, std::size_t samples,
                     std::uint64_t seed);

GramMatrix gram(const Matrix& points, GramMode mode);

// Empirical degrees of freedom tr G(G+lambda I)^{-1}, evaluated as
// J - lambda * tr((G+lambda I)^{-1}) through an SPD factorization of the
// symmetrized Gram.
double dof(const GramMatrix& g, double lambda);

struct DoFReport {
    std::string model_id;
    double lambda = 0.0;
    std::size_t samples = 0; // J
    std::uint64_t seed = 0;
    GramMode mode = GramMode::raw;
    std::size_t layers = 0;
    std::size_t heads = 0;
    std::vector<double> per_head;      // row-major by layer then head
    std::vector<double> per_layer_max; // max over heads, per layer

    double at(std::size_t layer, std::size_t head) const { return per_head[layer * heads + head]; }
};

// Full (layer, head) DoF table plus per-layer maxima. Heads draw from
// independent derived seeds, so the computation order never changes results.
DoFReport dof_report(const QKDump& dump, double lambda, std::size_t samples, std::uint64_t seed,
                     GramMode mode = GramMode::raw, const std::string& model_id = "unknown");

struct Allocation {
    std::size_t budget = 0; // C
    double lambda = 0.0;
    double inverse_scale = 0.0; // t^{-1}
    std::optional<std::size_t> clip;
    std::vector<std::size_t> dims; // M_s per layer
};

double round_half_even(double x);

// Budget-constrained per-layer dimensions: t^{-1} = C / mean_s(N_s),
// M_s = max(1, round_half_even(t^{-1} N_s)), clipped afterwards if requested.
Allocation allocate(const DoFReport& report, std::size_t budget,
                    std::optional<std::size_t> clip = std::nullopt);

} // namespace attnkern
