#pragma once

#include <cstddef>
#include <optional>

namespace pcc::simd {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);

// Structure-of-arrays input. For each point w = exp(2 pi i u0), winv = 1/w.
struct TailInput {
    const double* w_re;
    const double* w_im;
    const double* winv_re;
    const double* winv_im;
    std::size_t count;
};

// Q^1 .. Q^terms with Q = exp(2 pi i tau)
struct NomePowers {
    const double* re;
    const double* im;
    int terms;
};

// S = sum_n a/(1-a)^2 + b/(1-b)^2
// D = sum_n a(1+a)/(1-a)^3 - b(1+b)/(1-b)^3
// with a = w Q^n, b = Q^n / w.
struct TailOutput {
    double* s_re;
    double* s_im;
    double* d_re;
    double* d_im;
};

void wp_tail_scalar(const TailInput& in, const NomePowers& q, const TailOutput& out);
#if defined(PCC_HAVE_AVX2)
void wp_tail_avx2(const TailInput& in, const NomePowers& q, const TailOutput& out);
#endif

bool cpu_has_avx2();
Isa active_isa();
// Tests pin the ISA with this; nullopt restores detection.
void force_isa(std::optional<Isa> isa);

void wp_tail(const TailInput& in, const NomePowers& q, const TailOutput& out);

} // namespace pcc::simd
