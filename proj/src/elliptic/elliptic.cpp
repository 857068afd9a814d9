#include "pcc/elliptic.hpp"

#include <cmath>
#include <vector>

#include "pcc/wp_kernels.hpp"

namespace pcc {

namespace {

constexpr double kPoleTol = 1e-12;
constexpr double kHalfPeriodTol = 1e-12;

struct Prepared {
    Complex head_p;  // n = 0 term of the sine series
    Complex head_dp;
    Complex w;
    Complex winv;
};

Prepared prepare(Complex u, const EllipticContext& ctx) {
    auto r = ctx.reduce(u);
    Complex tau = ctx.tau();
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            if (std::abs(r.u0 - double(i) - double(j) * tau) < kPoleTol)
                throw Error(ErrorKind::PoleAt, "P has a pole at u = (" + std::to_string(u.real()) + ", " +
                                                   std::to_string(u.imag()) + ")");
    Complex s = std::sin(kPi * r.u0);
    Complex c = std::cos(kPi * r.u0);
    Prepared out;
    out.head_p = kPi * kPi / (s * s);
    out.head_dp = -2.0 * kPi * kPi * kPi * c / (s * s * s);
    out.w = std::exp(2.0 * kPi * kI * r.u0);
    out.winv = 1.0 / out.w;
    return out;
}

WpValue assemble(const Prepared& h, Complex s, Complex d, const EllipticContext& ctx) {
    const double pi2 = kPi * kPi;
    return {h.head_p - 4.0 * pi2 * s + ctx.series_constant(), h.head_dp - 8.0 * pi2 * kPi * kI * d};
}

} // namespace

EllipticContext::EllipticContext(Complex tau, int lattice_order, int theta_order)
    : tau_(tau), lattice_order_(lattice_order), theta_order_(theta_order) {
    if (!(tau.imag() > 0.0))
        throw Error(ErrorKind::BadContext, "Im tau must be positive");
    if (lattice_order < 1 || theta_order < 1)
        throw Error(ErrorKind::BadContext, "truncation orders must be positive");
    // the worst retained term of the tail is |Q|^(N - 1/2); below this the
    // truncation error would dominate double precision
    if (2.0 * kPi * tau.imag() * (lattice_order - 0.5) < 36.0)
        throw Error(ErrorKind::BadContext, "Im tau too small for lattice_order " + std::to_string(lattice_order));

    Complex q = std::exp(2.0 * kPi * kI * tau);
    Complex qn = 1.0;
    series_const_ = -kPi * kPi / 3.0;
    for (int n = 1; n <= lattice_order; ++n) {
        qn *= q;
        nome_pows_.push_back(qn);
        nome_re_.push_back(qn.real());
        nome_im_.push_back(qn.imag());
        series_const_ += 8.0 * kPi * kPi * qn / ((1.0 - qn) * (1.0 - qn));
    }
    e1_ = weierstrass_p(half_period(1), *this);
    e2_ = weierstrass_p(half_period(2), *this);
    e3_ = weierstrass_p(half_period(3), *this);
}

Complex EllipticContext::half_period(int k) const {
    switch (k) {
    case 0: return 0.0;
    case 1: return 0.5;
    case 2: return -0.5 * (1.0 + tau_);
    case 3: return 0.5 * tau_;
    }
    throw Error(ErrorKind::InvalidArgument, "half-period index must be 0..3");
}

Complex EllipticContext::e(int k) const {
    switch (k) {
    case 1: return e1_;
    case 2: return e2_;
    case 3: return e3_;
    }
    throw Error(ErrorKind::InvalidArgument, "e_k index must be 1..3");
}

EllipticContext::Reduced EllipticContext::reduce(Complex u) const {
    double y = u.imag() / tau_.imag();
    long n = std::lround(y);
    Complex v = u - double(n) * tau_;
    double x = v.real() - (v.imag() / tau_.imag()) * tau_.real();
    long m = std::lround(x);
    return {v - double(m), m, n};
}

WpValue weierstrass(Complex u, const EllipticContext& ctx) {
    Prepared h = prepare(u, ctx);
    double wr = h.w.real(), wi = h.w.imag(), vr = h.winv.real(), vi = h.winv.imag();
    double sr, si, dr, di;
    simd::wp_tail_scalar({&wr, &wi, &vr, &vi, 1}, {ctx.nome2_re().data(), ctx.nome2_im().data(), ctx.lattice_order()}, {&sr, &si, &dr, &di});
    return assemble(h, {sr, si}, {dr, di}, ctx);
}

void weierstrass_batch(std::span<const Complex> u, const EllipticContext& ctx, std::span<Complex> p,
                       std::span<Complex> dp) {
    if (p.size() < u.size() || dp.size() < u.size())
        throw Error(ErrorKind::InvalidArgument, "output spans shorter than input");
    std::size_t n = u.size();
    std::vector<Prepared> heads(n);
    std::vector<double> wr(n), wi(n), vr(n), vi(n), sr(n), si(n), dr(n), di(n);
    for (std::size_t i = 0; i < n; ++i) {
        heads[i] = prepare(u[i], ctx);
        wr[i] = heads[i].w.real();
        wi[i] = heads[i].w.imag();
        vr[i] = heads[i].winv.real();
        vi[i] = heads[i].winv.imag();
    }
    simd::wp_tail({wr.data(), wi.data(), vr.data(), vi.data(), n},
                  {ctx.nome2_re().data(), ctx.nome2_im().data(), ctx.lattice_order()},
                  {sr.data(), si.data(), dr.data(), di.data()});
    for (std::size_t i = 0; i < n; ++i) {
        WpValue v = assemble(heads[i], {sr[i], si[i]}, {dr[i], di[i]}, ctx);
        p[i] = v.p;
        dp[i] = v.dp;
    }
}

ThetaValue theta(Complex u, const EllipticContext& ctx) {
    auto r = ctx.reduce(u);
    Complex tau = ctx.tau();
    Complex v0 = 0.0, v1 = 0.0, v2 = 0.0, vt = 0.0;
    for (int k = -ctx.theta_order(); k <= ctx.theta_order(); ++k) {
        double kk = k;
        Complex term = std::exp(kPi * kI * tau * kk * kk + 2.0 * kPi * kI * kk * r.u0);
        v0 += term;
        v1 += 2.0 * kPi * kI * kk * term;
        v2 += -4.0 * kPi * kPi * kk * kk * term;
        vt += kPi * kI * kk * kk * term;
    }
    double n = double(r.n);
    Complex pref = std::exp(-kPi * kI * tau * n * n - 2.0 * kPi * kI * n * r.u0);
    ThetaValue out;
    out.value = pref * v0;
    out.du = pref * (v1 - 2.0 * kPi * kI * n * v0);
    out.duu = pref * (v2 - 4.0 * kPi * kI * n * v1 - 4.0 * kPi * kPi * n * n * v0);
    out.dtau = pref * (vt - n * v1 + kPi * kI * n * n * v0);
    return out;
}

FValue f_and_derivatives(Complex u, const EllipticContext& ctx) {
    WpValue w = weierstrass(u, ctx);
    if (std::abs(w.dp) < kHalfPeriodTol)
        throw Error(ErrorKind::HalfPeriodSingularity, "P'(u) vanishes, u is a half-period");
    Complex de = ctx.e(2) - ctx.e(1);
    ThetaValue th = theta(u + ctx.half_period(1), ctx);
    FValue out;
    out.f = (w.p - ctx.e(1)) / de;
    out.f_u = w.dp / de;
    out.f_tau = out.f_u * (th.du / th.value) / (2.0 * kPi * kI);
    return out;
}

Complex asymptotic_p(Complex u, int shift, const EllipticContext& ctx, int order) {
    if (order < 0 || order > 2)
        throw Error(ErrorKind::InvalidArgument, "asymptotic order must be 0, 1 or 2");
    const double pi2 = kPi * kPi;
    Complex q = std::exp(kPi * kI * ctx.tau());
    Complex q2 = q * q;
    Complex c2 = std::cos(2.0 * kPi * u);
    Complex c4 = std::cos(4.0 * kPi * u);
    Complex out;
    switch (shift) {
    case 0: {
        Complex s = std::sin(kPi * u);
        out = pi2 / (s * s) - pi2 / 3.0;
        if (order >= 2)
            out += 8.0 * pi2 * (1.0 - c2) * q2;
        return out;
    }
    case 1: {
        Complex c = std::cos(kPi * u);
        out = pi2 / (c * c) - pi2 / 3.0;
        if (order >= 2)
            out += 8.0 * pi2 * (1.0 + c2) * q2;
        return out;
    }
    case 2:
    case 3: {
        double sign = shift == 3 ? -1.0 : 1.0;
        out = -pi2 / 3.0;
        if (order >= 1)
            out += sign * 8.0 * pi2 * c2 * q;
        if (order >= 2)
            out += (8.0 * pi2 - 16.0 * pi2 * c4) * q2;
        return out;
    }
    }
    throw Error(ErrorKind::InvalidArgument, "shift must be 0..3");
}

Complex p_trig_deviation(Complex u, const EllipticContext& ctx) {
    auto r = ctx.reduce(u);
    if (r.n != 0)
        throw Error(ErrorKind::InvalidArgument, "deviation needs |Im u| < Im tau / 2");
    const double pi2 = kPi * kPi;
    Complex tau = ctx.tau();
    Complex sum = 0.0;
    for (int n = ctx.lattice_order(); n >= 1; --n) {
        Complex sp = std::sin(kPi * (u + double(n) * tau));
        Complex sm = std::sin(kPi * (u - double(n) * tau));
        Complex s0 = std::sin(kPi * double(n) * tau);
        sum += pi2 / (sp * sp) + pi2 / (sm * sm) - 2.0 * pi2 / (s0 * s0);
    }
    return sum;
}

Complex asymptotic_p_pair(Complex u, const EllipticContext& ctx, int order) {
    return asymptotic_p(u, 2, ctx, order) + asymptotic_p(u, 3, ctx, order);
}

} // namespace pcc
