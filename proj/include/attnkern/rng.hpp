#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace attnkern {

// splitmix64 step; used both as a mixer for seed derivation and to seed the engine.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Combines a master seed with stream indices (layer, head, trial, ...) into an
// independent per-stream seed. Deterministic and order-free: workers can be
// scheduled in any order and still draw identical streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0xd6e8feb86659fd93ULL;
    h ^= splitmix64(s);
    s ^= b * 0xa5a5a5a5a5a5a5a5ULL + 0x2545f4914f6cdd1dULL;
    h ^= splitmix64(s);
    return h;
}

// mt19937_64 with hand-rolled uniform/Gaussian transforms. The standard pins
// the engine's output exactly, but leaves <random> distributions
// implementation-defined; owning the transforms keeps every stream
// bit-reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; never zero, safe under log().
    double uniform01_open_at_zero() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Box-Muller, pair-cached.
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01_open_at_zero();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    void fill_gaussian(double* dst, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) dst[i] = gaussian();
    }

    // Uniform integer in [0, n). Modulo bias is below 2^-53 for any n that
    // fits the workloads here.
    std::size_t next_below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    // k distinct indices drawn uniformly from [0, n), via partial Fisher-Yates.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + next_below(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace attnkern
