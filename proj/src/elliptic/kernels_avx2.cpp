#include "pcc/wp_kernels.hpp"

#include <immintrin.h>

namespace pcc::simd {

namespace {

struct V2 {
    __m256d re;
    __m256d im;
};

// no fmadd on purpose: keeps lanes bit-compatible with the scalar kernel
inline V2 mul(V2 a, V2 b) {
    return {_mm256_sub_pd(_mm256_mul_pd(a.re, b.re), _mm256_mul_pd(a.im, b.im)),
            _mm256_add_pd(_mm256_mul_pd(a.re, b.im), _mm256_mul_pd(a.im, b.re))};
}

inline void pole_terms(V2 x, V2& t1, V2& t2) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    V2 d{_mm256_sub_pd(one, x.re), _mm256_sub_pd(zero, x.im)};
    __m256d inv = _mm256_div_pd(one, _mm256_add_pd(_mm256_mul_pd(d.re, d.re), _mm256_mul_pd(d.im, d.im)));
    V2 r{_mm256_mul_pd(d.re, inv), _mm256_sub_pd(zero, _mm256_mul_pd(d.im, inv))};
    V2 r2 = mul(r, r);
    V2 r3 = mul(r2, r);
    t1 = mul(x, r2);
    V2 xp{_mm256_add_pd(one, x.re), x.im};
    t2 = mul(mul(x, xp), r3);
}

} // namespace

void wp_tail_avx2(const TailInput& in, const NomePowers& q, const TailOutput& out) {
    std::size_t i = 0;
    for (; i + 4 <= in.count; i += 4) {
        V2 w{_mm256_loadu_pd(in.w_re + i), _mm256_loadu_pd(in.w_im + i)};
        V2 wi{_mm256_loadu_pd(in.winv_re + i), _mm256_loadu_pd(in.winv_im + i)};
        V2 s{_mm256_setzero_pd(), _mm256_setzero_pd()};
        V2 dd{_mm256_setzero_pd(), _mm256_setzero_pd()};
        for (int n = 0; n < q.terms; ++n) {
            V2 qn{_mm256_set1_pd(q.re[n]), _mm256_set1_pd(q.im[n])};
            V2 a = mul(w, qn);
            V2 b = mul(wi, qn);
            V2 a1, a2, b1, b2;
            pole_terms(a, a1, a2);
            pole_terms(b, b1, b2);
            s.re = _mm256_add_pd(s.re, _mm256_add_pd(a1.re, b1.re));
            s.im = _mm256_add_pd(s.im, _mm256_add_pd(a1.im, b1.im));
            dd.re = _mm256_add_pd(dd.re, _mm256_sub_pd(a2.re, b2.re));
            dd.im = _mm256_add_pd(dd.im, _mm256_sub_pd(a2.im, b2.im));
        }
        _mm256_storeu_pd(out.s_re + i, s.re);
        _mm256_storeu_pd(out.s_im + i, s.im);
        _mm256_storeu_pd(out.d_re + i, dd.re);
        _mm256_storeu_pd(out.d_im + i, dd.im);
    }
    if (i < in.count) {
        TailInput rest{in.w_re + i, in.w_im + i, in.winv_re + i, in.winv_im + i, in.count - i};
        TailOutput rest_out{out.s_re + i, out.s_im + i, out.d_re + i, out.d_im + i};
        wp_tail_scalar(rest, q, rest_out);
    }
}

} // namespace pcc::simd
