#pragma once

#include <span>

#include "pcc/common.hpp"

namespace pcc {

// Periods 1 and tau. Half-periods w1 = 1/2, w2 = -(1 + tau)/2, w3 = tau/2.
// Everything that depends only on tau is computed once in the constructor, so
// a context can be shared freely between threads.
class EllipticContext {
public:
    explicit EllipticContext(Complex tau, int lattice_order = 24, int theta_order = 16);

    EllipticContext at(Complex tau) const { return EllipticContext(tau, lattice_order_, theta_order_); }

    Complex tau() const { return tau_; }
    int lattice_order() const { return lattice_order_; }
    int theta_order() const { return theta_order_; }

    // exp(2 pi i tau) and its powers 1..lattice_order
    Complex nome2() const { return nome_pows_.front(); }
    const CVec& nome2_powers() const { return nome_pows_; }
    const std::vector<double>& nome2_re() const { return nome_re_; }
    const std::vector<double>& nome2_im() const { return nome_im_; }
    Complex series_constant() const { return series_const_; }

    Complex half_period(int k) const;
    Complex e(int k) const;
    Complex t() const { return (e3_ - e1_) / (e2_ - e1_); }

    struct Reduced {
        Complex u0;
        long m; // u = u0 + m + n tau
        long n;
    };
    Reduced reduce(Complex u) const;

private:
    Complex tau_;
    int lattice_order_;
    int theta_order_;
    CVec nome_pows_;
    std::vector<double> nome_re_, nome_im_;
    Complex series_const_;
    Complex e1_, e2_, e3_;
};

struct WpValue {
    Complex p;
    Complex dp;
};

WpValue weierstrass(Complex u, const EllipticContext& ctx);
inline Complex weierstrass_p(Complex u, const EllipticContext& ctx) { return weierstrass(u, ctx).p; }
inline Complex weierstrass_p_prime(Complex u, const EllipticContext& ctx) { return weierstrass(u, ctx).dp; }

// P(u + w_n), n = 0..3
inline Complex shifted_p(Complex u, int n, const EllipticContext& ctx) {
    return n == 0 ? weierstrass_p(u, ctx) : weierstrass_p(u + ctx.half_period(n), ctx);
}

// Many points at once; the series tail runs through the SIMD kernel when the
// CPU has one. Throws PoleAt on the first point that sits on the lattice.
void weierstrass_batch(std::span<const Complex> u, const EllipticContext& ctx,
                       std::span<Complex> p, std::span<Complex> dp);

struct ThetaValue {
    Complex value;
    Complex du;
    Complex duu;
    Complex dtau;
};

// theta(u; tau) = sum_n exp(pi i tau n^2 + 2 pi i n u)
ThetaValue theta(Complex u, const EllipticContext& ctx);

// f(u) = (P(u) - e1)/(e2 - e1) with its u and tau derivatives.
struct FValue {
    Complex f;
    Complex f_u;
    Complex f_tau;
};
FValue f_and_derivatives(Complex u, const EllipticContext& ctx);

// Truncated small-nome expansion of P(u + w_shift) keeping powers of
// exp(pi i tau) up to `order` (0, 1 or 2).
Complex asymptotic_p(Complex u, int shift, const EllipticContext& ctx, int order);
// P(u) - (pi^2/sin^2(pi u) - pi^2/3) summed term by term, so it stays
// accurate when it is far below the resolution of P itself (large Im tau).
Complex p_trig_deviation(Complex u, const EllipticContext& ctx);

// P(u + w2) + P(u + w3), same truncation rule.
Complex asymptotic_p_pair(Complex u, const EllipticContext& ctx, int order);

} // namespace pcc
