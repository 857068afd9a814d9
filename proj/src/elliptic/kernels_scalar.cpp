#include "pcc/wp_kernels.hpp"

namespace pcc::simd {

namespace {

struct C2 {
    double re;
    double im;
};

inline C2 mul(C2 a, C2 b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

// x/(1-x)^2 and x(1+x)/(1-x)^3, written exactly as the vector kernel does it
inline void pole_terms(C2 x, C2& t1, C2& t2) {
    C2 d{1.0 - x.re, -x.im};
    double inv = 1.0 / (d.re * d.re + d.im * d.im);
    C2 r{d.re * inv, -d.im * inv};
    C2 r2 = mul(r, r);
    C2 r3 = mul(r2, r);
    t1 = mul(x, r2);
    C2 xp{1.0 + x.re, x.im};
    t2 = mul(mul(x, xp), r3);
}

} // namespace

void wp_tail_scalar(const TailInput& in, const NomePowers& q, const TailOutput& out) {
    for (std::size_t i = 0; i < in.count; ++i) {
        C2 w{in.w_re[i], in.w_im[i]};
        C2 wi{in.winv_re[i], in.winv_im[i]};
        C2 s{0.0, 0.0};
        C2 dd{0.0, 0.0};
        for (int n = 0; n < q.terms; ++n) {
            C2 qn{q.re[n], q.im[n]};
            C2 a = mul(w, qn);
            C2 b = mul(wi, qn);
            C2 a1, a2, b1, b2;
            pole_terms(a, a1, a2);
            pole_terms(b, b1, b2);
            s.re += a1.re + b1.re;
            s.im += a1.im + b1.im;
            dd.re += a2.re - b2.re;
            dd.im += a2.im - b2.im;
        }
        out.s_re[i] = s.re;
        out.s_im[i] = s.im;
        out.d_re[i] = dd.re;
        out.d_im[i] = dd.im;
    }
}

} // namespace pcc::simd
