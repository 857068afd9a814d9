#include <cmath>
#include <optional>

#include "pcc/systems.hpp"

#include "context_at.hpp"

namespace pcc {

using detail::context_at;

namespace {

constexpr double kSingularTol = 1e-12;

void require_nonzero(Complex x, const char* what) {
    if (std::abs(x) < kSingularTol)
        throw Error(ErrorKind::CoordinateSingularity, what);
}

// ---- Painleve side: H = sum_j A mu^2 - B mu + C + two-body ----

struct Coef {
    Complex a, da, b, db, c, dc;
};

struct AuxCache {
    Complex k0, k1, th, k, th1, eta1, thinf, etainf, th0, eta0, alpha;

    explicit AuxCache(const SystemDescriptor& sys) {
        const AuxParams& x = sys.aux;
        switch (sys.equation) {
        case Equation::VI:
            k0 = x.get("kappa0"), k1 = x.get("kappa1"), th = x.get("theta"), k = x.get("kappa");
            break;
        case Equation::V:
            k0 = x.get("kappa0"), th1 = x.get("theta1"), eta1 = x.get("eta1"), k = x.get("kappa");
            break;
        case Equation::IV:
            k0 = x.get("kappa0"), thinf = x.get("theta_inf");
            break;
        case Equation::III:
            etainf = x.get("eta_inf"), thinf = x.get("theta_inf"), eta0 = x.get("eta0"), th0 = x.get("theta0");
            break;
        case Equation::II:
            alpha = x.has("alpha") ? x.get("alpha") : sys.params.alpha;
            break;
        case Equation::I:
            break;
        }
    }
};

Coef painleve_coef(Equation eq, const AuxCache& p, Complex l, Complex t) {
    Coef c{};
    switch (eq) {
    case Equation::VI: {
        Complex d = t * (t - 1.0);
        c.a = l * (l - 1.0) * (l - t) / d;
        c.da = (3.0 * l * l - 2.0 * (1.0 + t) * l + t) / d;
        c.b = (p.k0 * (l - 1.0) * (l - t) + p.k1 * l * (l - t) + (p.th - 1.0) * l * (l - 1.0)) / d;
        c.db = (p.k0 * (2.0 * l - 1.0 - t) + p.k1 * (2.0 * l - t) + (p.th - 1.0) * (2.0 * l - 1.0)) / d;
        c.c = p.k * (l - t) / d;
        c.dc = p.k / d;
        break;
    }
    case Equation::V:
        c.a = l * (l - 1.0) * (l - 1.0) / t;
        c.da = ((l - 1.0) * (l - 1.0) + 2.0 * l * (l - 1.0)) / t;
        c.b = (p.k0 * (l - 1.0) * (l - 1.0) + p.th1 * l * (l - 1.0) - p.eta1 * t * l) / t;
        c.db = (2.0 * p.k0 * (l - 1.0) + p.th1 * (2.0 * l - 1.0) - p.eta1 * t) / t;
        c.c = p.k * (l - 1.0) / t;
        c.dc = p.k / t;
        break;
    case Equation::IV:
        c.a = 2.0 * l;
        c.da = 2.0;
        c.b = l * l + 2.0 * t * l + 2.0 * p.k0;
        c.db = 2.0 * l + 2.0 * t;
        c.c = p.thinf * l;
        c.dc = p.thinf;
        break;
    case Equation::III:
        c.a = l * l / t;
        c.da = 2.0 * l / t;
        c.b = (p.etainf * l * l + p.th0 * l - p.eta0 * t) / t;
        c.db = (2.0 * p.etainf * l + p.th0) / t;
        c.c = p.etainf * (p.th0 + p.thinf) * l / (2.0 * t);
        c.dc = p.etainf * (p.th0 + p.thinf) / (2.0 * t);
        break;
    case Equation::II:
        c.a = 0.5;
        c.b = l * l + t / 2.0;
        c.db = 2.0 * l;
        c.c = -(p.alpha + 0.5) * l;
        c.dc = -(p.alpha + 0.5);
        break;
    case Equation::I:
        c.a = 0.5;
        c.c = -2.0 * l * l * l - t * l;
        c.dc = -6.0 * l * l - t;
        break;
    }
    return c;
}

// summand w(x, y) of the ordered-pair two-body sum and its x-derivative
struct PairTerm {
    Complex w, dx;
};

PairTerm painleve_pair(Equation eq, Complex g4sq, Complex x, Complex y, Complex t) {
    Complex d = x - y;
    if (std::abs(d) < kSingularTol)
        throw Error(ErrorKind::TwoBodyCollision, "lambda_j = lambda_k");
    Complex d2 = d * d, d3 = d2 * d;
    switch (eq) {
    case Equation::VI: {
        Complex k = g4sq / (2.0 * t * (t - 1.0));
        auto P = [&](Complex z) { return z * (z - 1.0) * (z - t); };
        Complex dPx = 3.0 * x * x - 2.0 * (1.0 + t) * x + t;
        Complex s = P(x) + P(y);
        return {k * (2.0 * s / d2 - 2.0 * (x + y)), k * (2.0 * dPx / d2 - 4.0 * s / d3 - 2.0)};
    }
    case Equation::V: {
        Complex k = g4sq / (2.0 * t);
        Complex n = (x - 1.0) * (y - 1.0) * (x + y);
        Complex dn = (y - 1.0) * (2.0 * x + y - 1.0);
        return {2.0 * k * n / d2, 2.0 * k * (dn / d2 - 2.0 * n / d3)};
    }
    case Equation::IV: {
        Complex k = g4sq / 16.0;
        return {2.0 * k * (x + y) / d2, 2.0 * k * (1.0 / d2 - 2.0 * (x + y) / d3)};
    }
    case Equation::III: {
        Complex k = g4sq / (2.0 * t);
        return {4.0 * k * x * y / d2, 4.0 * k * (y / d2 - 2.0 * x * y / d3)};
    }
    case Equation::II:
    case Equation::I:
        return {g4sq / d2, -2.0 * g4sq / d3};
    }
    return {};
}

void check_painleve_time(Equation eq, Complex t) {
    if (eq == Equation::VI) {
        require_nonzero(t, "t = 0 is a fixed singularity");
        require_nonzero(t - 1.0, "t = 1 is a fixed singularity");
    } else if (eq == Equation::V || eq == Equation::III) {
        require_nonzero(t, "t = 0 is a fixed singularity");
    }
}

// ---- Calogero side ----

WpValue wp_or_singular(Complex u, const EllipticContext& ctx) {
    try {
        return weierstrass(u, ctx);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::PoleAt)
            throw Error(ErrorKind::CoordinateSingularity, "potential has a pole");
        throw;
    }
}

// 1/sinh^2(x/2) and its derivative
PairTerm inv_sinh2(Complex x) {
    Complex s = std::sinh(x / 2.0), c = std::cosh(x / 2.0);
    require_nonzero(s, "sinh(q/2) = 0");
    return {1.0 / (s * s), -c / (s * s * s)};
}

PairTerm inv_sq(Complex x) {
    require_nonzero(x, "coordinate collision");
    return {1.0 / (x * x), -2.0 / (x * x * x)};
}

// phi(q_j - q_k) [+ phi(q_j + q_k)] for one ordered pair; dx is d/dq_j of the
// pair's contribution counted from both orders.
PairTerm calogero_pair(Equation eq, Complex x, Complex y, const EllipticContext* ell) {
    auto both = [](PairTerm a, PairTerm b) { return PairTerm{a.w + b.w, 2.0 * (a.dx + b.dx)}; };
    switch (eq) {
    case Equation::VI: {
        auto m = wp_or_singular(x - y, *ell), p = wp_or_singular(x + y, *ell);
        return both({m.p, m.dp}, {p.p, p.dp});
    }
    case Equation::V: return both(inv_sinh2(x - y), inv_sinh2(x + y));
    case Equation::IV: return both(inv_sq(x - y), inv_sq(x + y));
    case Equation::III: {
        auto m = inv_sinh2(x - y);
        return {m.w, 2.0 * m.dx};
    }
    case Equation::II:
    case Equation::I: {
        auto m = inv_sq(x - y);
        return {m.w, 2.0 * m.dx};
    }
    }
    return {};
}

} // namespace

Potential calogero_potential(const PainleveParams& pp, Complex q, Complex t, const EllipticContext* ctx) {
    switch (pp.equation) {
    case Equation::VI: {
        std::optional<EllipticContext> slot;
        const EllipticContext& c = context_at(t, ctx, slot);
        Complex alphas[4] = {pp.alpha, -pp.beta, pp.gamma, 0.5 - pp.delta};
        Potential out{0.0, 0.0};
        for (int n = 0; n < 4; ++n) {
            WpValue w = wp_or_singular(q + c.half_period(n), c);
            out.v -= alphas[n] * w.p;
            out.dv -= alphas[n] * w.dp;
        }
        return out;
    }
    case Equation::V: {
        Complex s = std::sinh(q / 2.0), c = std::cosh(q / 2.0);
        require_nonzero(s, "sinh(q/2) = 0");
        require_nonzero(c, "cosh(q/2) = 0");
        Complex v = -pp.alpha / (s * s) - pp.beta / (c * c) + pp.gamma * t / 2.0 * std::cosh(q) +
                    pp.delta * t * t / 8.0 * std::cosh(2.0 * q);
        Complex dv = pp.alpha * c / (s * s * s) + pp.beta * s / (c * c * c) + pp.gamma * t / 2.0 * std::sinh(q) +
                     pp.delta * t * t / 4.0 * std::sinh(2.0 * q);
        return {v, dv};
    }
    case Equation::IV: {
        Complex s = q / 2.0;
        require_nonzero(s, "q = 0");
        Complex s2 = s * s;
        Complex v = -0.5 * s2 * s2 * s2 - 2.0 * t * s2 * s2 - 2.0 * (t * t - pp.alpha) * s2 + pp.beta / s2;
        Complex dvds = -3.0 * s2 * s2 * s - 8.0 * t * s2 * s - 4.0 * (t * t - pp.alpha) * s - 2.0 * pp.beta / (s2 * s);
        return {v, 0.5 * dvds};
    }
    case Equation::III: {
        Complex e = std::exp(q), ei = std::exp(-q);
        Complex v = -pp.alpha / 4.0 * e + pp.beta * t / 4.0 * ei - pp.gamma / 8.0 * e * e +
                    pp.delta * t * t / 8.0 * ei * ei;
        Complex dv = -pp.alpha / 4.0 * e - pp.beta * t / 4.0 * ei - pp.gamma / 4.0 * e * e -
                     pp.delta * t * t / 4.0 * ei * ei;
        return {v, dv};
    }
    case Equation::II: {
        Complex w = q * q + t / 2.0;
        return {-0.5 * w * w - pp.alpha * q, -2.0 * q * w - pp.alpha};
    }
    case Equation::I:
        return {-2.0 * q * q * q - t * q, -6.0 * q * q - t};
    }
    return {};
}

namespace {

void check_state(const SystemDescriptor& sys, const PhaseState& s) {
    if (int(s.coords.size()) != sys.rank || int(s.momenta.size()) != sys.rank)
        throw Error(ErrorKind::InvalidArgument, "state size does not match rank");
}

struct Eval {
    Complex h;
    Gradients g;
};

Eval evaluate(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx, bool want_grad) {
    check_state(sys, s);
    int n = sys.rank;
    Eval out{0.0, {CVec(n, 0.0), CVec(n, 0.0)}};
    Complex t = s.time;
    bool pairs = n > 1 && sys.g4sq != Complex(0.0);

    if (sys.side == Side::Painleve) {
        check_painleve_time(sys.equation, t);
        AuxCache aux(sys);
        for (int j = 0; j < n; ++j) {
            Complex l = s.coords[j], m = s.momenta[j];
            Coef c = painleve_coef(sys.equation, aux, l, t);
            out.h += c.a * m * m - c.b * m + c.c;
            if (want_grad) {
                out.g.d_coords[j] = c.da * m * m - c.db * m + c.dc;
                out.g.d_momenta[j] = 2.0 * c.a * m - c.b;
            }
        }
        if (pairs)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (j == k)
                        continue;
                    PairTerm w = painleve_pair(sys.equation, sys.g4sq, s.coords[j], s.coords[k], t);
                    out.h += w.w;
                    if (want_grad)
                        out.g.d_coords[j] += 2.0 * w.dx;
                }
        return out;
    }

    std::optional<EllipticContext> slot;
    const EllipticContext* ell = nullptr;
    if (sys.equation == Equation::VI)
        ell = &context_at(t, ctx, slot);
    for (int j = 0; j < n; ++j) {
        Complex p = s.momenta[j];
        Potential v = calogero_potential(sys.params, s.coords[j], t, ell);
        out.h += p * p / 2.0 + v.v;
        if (want_grad) {
            out.g.d_coords[j] = v.dv;
            out.g.d_momenta[j] = p;
        }
    }
    if (pairs)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (j == k)
                    continue;
                PairTerm w = calogero_pair(sys.equation, s.coords[j], s.coords[k], ell);
                out.h += sys.g4sq * w.w;
                if (want_grad)
                    out.g.d_coords[j] += sys.g4sq * w.dx;
            }
    return out;
}

Complex gauge_factor(const SystemDescriptor& sys, Complex time) {
    switch (sys.gauge()) {
    case TimeGauge::Tau: return 2.0 * kPi * kI;
    case TimeGauge::LogT: return time;
    case TimeGauge::T: return 1.0;
    }
    return 1.0;
}

} // namespace

Complex hamiltonian(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx) {
    return evaluate(sys, s, ctx, false).h;
}

Gradients hamiltonian_gradients(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx) {
    return evaluate(sys, s, ctx, true).g;
}

PhaseVelocity canonical_field(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx) {
    Gradients g = hamiltonian_gradients(sys, s, ctx);
    Complex f = gauge_factor(sys, s.time);
    PhaseVelocity v{CVec(sys.rank), CVec(sys.rank)};
    for (int j = 0; j < sys.rank; ++j) {
        v.coords[j] = g.d_momenta[j] / f;
        v.momenta[j] = -g.d_coords[j] / f;
    }
    return v;
}

Complex autonomous_check(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx, double h) {
    PhaseVelocity v = canonical_field(sys, s, ctx);
    auto moved = [&](double step) {
        PhaseState m = s;
        for (int j = 0; j < sys.rank; ++j) {
            m.coords[j] += step * v.coords[j];
            m.momenta[j] += step * v.momenta[j];
        }
        m.time += step;
        return hamiltonian(sys, m, ctx);
    };
    auto shifted = [&](double step) {
        PhaseState m = s;
        m.time += step;
        return hamiltonian(sys, m, ctx);
    };
    Complex along = (moved(h) - moved(-h)) / (2.0 * h);
    Complex explicit_t = (shifted(h) - shifted(-h)) / (2.0 * h);
    return along - explicit_t;
}

} // namespace pcc
