#include "attnkern/simd/kernels.hpp"

#include "attnkern/errors.hpp"

namespace attnkern::kern {

namespace detail {
extern const KernelTable scalar_table;
#if defined(ATTNKERN_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
} // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(ATTNKERN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect_backend() { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

Backend& forced_slot() {
    static Backend forced = Backend::scalar;
    return forced;
}

bool& forced_flag() {
    static bool is_forced = false;
    return is_forced;
}

} // namespace

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "unknown";
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::scalar};
    if (cpu_has_avx2()) out.push_back(Backend::avx2);
    return out;
}

Backend active_backend() {
    if (forced_flag()) return forced_slot();
    static const Backend detected = detect_backend();
    return detected;
}

const KernelTable& table_for(Backend b) {
    switch (b) {
    case Backend::scalar: return detail::scalar_table;
    case Backend::avx2:
#if defined(ATTNKERN_HAVE_AVX2)
        if (cpu_has_avx2()) return detail::avx2_table;
#endif
        throw argument_error("kern: avx2 backend not available on this CPU/build");
    }
    return detail::scalar_table;
}

const KernelTable& table() { return table_for(active_backend()); }

void force_backend(Backend b) {
    table_for(b); // validates availability
    forced_slot() = b;
    forced_flag() = true;
}

void reset_backend() { forced_flag() = false; }

} // namespace attnkern::kern
