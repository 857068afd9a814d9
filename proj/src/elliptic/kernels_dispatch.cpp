#include "pcc/wp_kernels.hpp"

#include <atomic>

namespace pcc::simd {

namespace {

// -1: follow detection, otherwise an Isa value
std::atomic<int> g_forced{-1};

} // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "?";
}

bool cpu_has_avx2() {
#if defined(PCC_HAVE_AVX2)
    static const bool has = __builtin_cpu_supports("avx2");
    return has;
#else
    return false;
#endif
}

Isa active_isa() {
    int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) {
        auto isa = static_cast<Isa>(forced);
        if (isa == Isa::Avx2 && !cpu_has_avx2())
            return Isa::Scalar;
        return isa;
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

void force_isa(std::optional<Isa> isa) {
    g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void wp_tail(const TailInput& in, const NomePowers& q, const TailOutput& out) {
#if defined(PCC_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) {
        wp_tail_avx2(in, q, out);
        return;
    }
#endif
    wp_tail_scalar(in, q, out);
}

} // namespace pcc::simd
