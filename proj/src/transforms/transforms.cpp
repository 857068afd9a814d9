#include "pcc/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "context_at.hpp"

namespace pcc {

using detail::context_at;

namespace {

constexpr double kMapTol = 1e-12;

void map_guard(Complex x, const char* what) {
    if (std::abs(x) < kMapTol)
        throw Error(ErrorKind::MapSingularity, what);
}

// candidate + m + n tau (or + 2 pi i k when tau is unset) nearest to hint
Complex nearest_translate(Complex c, Complex hint, std::optional<Complex> tau) {
    if (!tau) {
        double k = std::round((hint - c).imag() / (2.0 * kPi));
        return c + Complex(0.0, 2.0 * kPi * k);
    }
    Complex d = hint - c;
    double y = d.imag() / tau->imag();
    double x = d.real() - y * tau->real();
    double m0 = std::round(x), n0 = std::round(y);
    Complex best = c;
    double best_d = INFINITY;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            Complex z = c + (m0 + i) + (n0 + j) * *tau;
            if (std::abs(z - hint) < best_d) {
                best_d = std::abs(z - hint);
                best = z;
            }
        }
    return best;
}

Complex pick_branch(Complex q0, std::optional<Complex> hint, std::optional<Complex> tau, bool symmetric) {
    if (!hint)
        return q0;
    Complex a = nearest_translate(q0, *hint, tau);
    if (!symmetric)
        return a;
    Complex b = nearest_translate(-q0, *hint, tau);
    return std::abs(a - *hint) <= std::abs(b - *hint) ? a : b;
}

Complex pvi_q_of_lambda(Complex lambda, const EllipticContext& ctx) {
    Complex de = ctx.e(2) - ctx.e(1);
    Complex target = ctx.e(1) + de * lambda;
    double scale = std::max(1.0, std::abs(target));
    if (!std::isfinite(std::abs(lambda)))
        throw Error(ErrorKind::MapSingularity, "lambda is not finite");
    // branch points 0, 1, t are the images of w1, w2, w3
    const Complex branch[] = {0.0, 1.0, ctx.t()};
    for (int k = 0; k < 3; ++k)
        if (std::abs(lambda - branch[k]) < 1e-10)
            return ctx.half_period(k + 1);

    // starts ranked by residual on a grid of the cell
    constexpr int G = 6;
    std::vector<std::pair<double, Complex>> starts;
    for (int i = 0; i < G; ++i)
        for (int j = 0; j < G; ++j) {
            Complex q = (i + 0.5) / G + (j + 0.5) / G * ctx.tau();
            starts.emplace_back(std::abs(weierstrass_p(q, ctx) - target), q);
        }
    std::sort(starts.begin(), starts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    for (std::size_t s = 0; s < 8 && s < starts.size(); ++s) {
        Complex q = starts[s].second;
        for (int it = 0; it < 60; ++it) {
            WpValue w;
            try {
                w = weierstrass(q, ctx);
            } catch (const Error&) {
                break;
            }
            Complex r = w.p - target;
            if (std::abs(r) <= 1e-14 * scale)
                return ctx.reduce(q).u0;
            if (std::abs(w.dp) < 1e-300)
                break;
            Complex step = r / w.dp;
            double len = std::abs(step);
            if (len > 0.1)
                step *= 0.1 / len;
            q -= step;
            if (len < 1e-15 * (1.0 + std::abs(q)) && std::abs(r) <= 1e-9 * scale)
                return ctx.reduce(q).u0;
        }
    }
    throw Error(ErrorKind::NoConvergence, "PVI lambda -> q Newton iteration failed");
}

} // namespace

Complex time_map_pvi(Complex tau, const EllipticContext* ctx) {
    std::optional<EllipticContext> slot;
    return context_at(tau, ctx, slot).t();
}

Complex jacobian_dtau_dt(Complex tau, const EllipticContext* ctx) {
    std::optional<EllipticContext> slot;
    const EllipticContext& c = context_at(tau, ctx, slot);
    Complex t = c.t();
    return kPi * kI / (t * (t - 1.0) * (c.e(2) - c.e(1)));
}

Complex time_map_pvi_inverse(Complex t, Complex tau_seed, const EllipticContext* ctx) {
    if (std::abs(t) < kMapTol || std::abs(t - 1.0) < kMapTol)
        throw Error(ErrorKind::MapSingularity, "t = 0 or 1 has no tau");
    Complex tau = tau_seed;
    for (int it = 0; it < 50; ++it) {
        std::optional<EllipticContext> slot;
        const EllipticContext& c = context_at(tau, ctx, slot);
        Complex r = c.t() - t;
        if (std::abs(r) < 1e-13 * std::max(1.0, std::abs(t)))
            return tau;
        Complex step = r * jacobian_dtau_dt(tau, &c);
        double damp = 1.0;
        while (!((tau - damp * step).imag() > 0.3) && damp > 1e-6)
            damp *= 0.5;
        tau -= damp * step;
    }
    throw Error(ErrorKind::NoConvergence, "tau(t) Newton iteration from seed (" + std::to_string(tau_seed.real()) +
                                              ", " + std::to_string(tau_seed.imag()) + ") failed");
}

Complex painleve_time(Equation eq, Complex time, const EllipticContext* ctx) {
    return eq == Equation::VI ? time_map_pvi(time, ctx) : time;
}

Complex painleve_time_derivative(Equation eq, Complex time, const EllipticContext* ctx) {
    return eq == Equation::VI ? 1.0 / jacobian_dtau_dt(time, ctx) : Complex(1.0);
}

Complex lambda_of_q(Equation eq, Complex q, Complex time, const EllipticContext* ctx) {
    switch (eq) {
    case Equation::VI: {
        std::optional<EllipticContext> slot;
        const EllipticContext& c = context_at(time, ctx, slot);
        try {
            return (weierstrass_p(q, c) - c.e(1)) / (c.e(2) - c.e(1));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::PoleAt)
                throw Error(ErrorKind::MapSingularity, "q is a lattice point");
            throw;
        }
    }
    case Equation::V: {
        Complex s = std::sinh(q / 2.0);
        map_guard(s, "q in 2 pi i Z");
        Complex ct = std::cosh(q / 2.0) / s;
        return ct * ct;
    }
    case Equation::IV: return q * q / 4.0;
    case Equation::III: return std::exp(q);
    case Equation::II:
    case Equation::I: return q;
    }
    return q;
}

Complex q_of_lambda(Equation eq, Complex lambda, Complex time, const EllipticContext* ctx,
                    std::optional<Complex> hint) {
    switch (eq) {
    case Equation::VI: {
        std::optional<EllipticContext> slot;
        const EllipticContext& c = context_at(time, ctx, slot);
        return pick_branch(pvi_q_of_lambda(lambda, c), hint, c.tau(), true);
    }
    case Equation::V: {
        if (std::abs(lambda) < kMapTol || std::abs(lambda - 1.0) < kMapTol)
            throw Error(ErrorKind::BranchCut, "lambda = 0 or 1 is a branch point");
        Complex s = std::sqrt(lambda);
        return pick_branch(std::log((s - 1.0) / (s + 1.0)), hint, std::nullopt, true);
    }
    case Equation::IV: {
        Complex q = 2.0 * std::sqrt(lambda);
        if (hint && std::abs(-q - *hint) < std::abs(q - *hint))
            return -q;
        return q;
    }
    case Equation::III:
        if (std::abs(lambda) < kMapTol)
            throw Error(ErrorKind::BranchCut, "lambda = 0");
        return pick_branch(std::log(lambda), hint, std::nullopt, false);
    case Equation::II:
    case Equation::I: return lambda;
    }
    return lambda;
}

MuAffine mu_affine(Equation eq, Complex q, Complex time, const AuxParams& aux, const EllipticContext* ctx) {
    MuAffine m{lambda_of_q(eq, q, time, ctx), 1.0, 0.0};
    Complex l = m.lambda;
    Complex t = time;
    switch (eq) {
    case Equation::VI: {
        std::optional<EllipticContext> slot;
        const EllipticContext& c = context_at(time, ctx, slot);
        FValue f;
        try {
            f = f_and_derivatives(q, c);
        } catch (const Error& e) {
            throw Error(ErrorKind::MapSingularity, e.what());
        }
        Complex de = c.e(2) - c.e(1);
        Complex P = c.e(1) + de * f.f;
        map_guard(P - c.e(1), "P(q) = e1");
        map_guard(P - c.e(2), "P(q) = e2");
        map_guard(P - c.e(3), "P(q) = e3");
        m.slope = 1.0 / f.f_u;
        m.offset = 2.0 * kPi * kI * f.f_tau / (f.f_u * f.f_u) +
                   de / 2.0 *
                       (aux.get("kappa0") / (P - c.e(1)) + aux.get("kappa1") / (P - c.e(2)) +
                        (aux.get("theta") - 1.0) / (P - c.e(3)));
        break;
    }
    case Equation::V: {
        Complex sh = std::sinh(q / 2.0);
        map_guard(sh, "q in 2 pi i Z");
        Complex s = -std::cosh(q / 2.0) / sh;
        map_guard(s, "sqrt(lambda) = 0");
        map_guard(l - 1.0, "lambda = 1");
        m.slope = 1.0 / (2.0 * s * (l - 1.0));
        m.offset = 0.5 * (aux.get("kappa0") / l + aux.get("theta1") / (l - 1.0) -
                          aux.get("eta1") * t / ((l - 1.0) * (l - 1.0)));
        break;
    }
    case Equation::IV: {
        Complex s = q / 2.0;
        map_guard(s, "q = 0");
        m.slope = 1.0 / (4.0 * s);
        m.offset = 0.25 * (l + 2.0 * t + 2.0 * aux.get("kappa0") / l);
        break;
    }
    case Equation::III:
        m.slope = 1.0 / (2.0 * l);
        m.offset = 0.5 * (aux.get("eta_inf") + aux.get("theta0") / l - aux.get("eta0") * t / (l * l));
        break;
    case Equation::II:
        m.offset = l * l + t / 2.0;
        break;
    case Equation::I:
        break;
    }
    return m;
}

Complex mu_of_pq(Equation eq, Complex q, Complex p, Complex time, const AuxParams& aux, const EllipticContext* ctx) {
    MuAffine m = mu_affine(eq, q, time, aux, ctx);
    return m.slope * p + m.offset;
}

std::pair<Complex, Complex> pq_of_lambdamu(Equation eq, Complex lambda, Complex mu, Complex time, const AuxParams& aux,
                                           const EllipticContext* ctx, std::optional<Complex> hint) {
    Complex q = q_of_lambda(eq, lambda, time, ctx, hint);
    MuAffine m = mu_affine(eq, q, time, aux, ctx);
    return {q, (mu - m.offset) / m.slope};
}

double one_form_constant(Equation eq) {
    switch (eq) {
    case Equation::VI: return 1.0;
    case Equation::V: return 0.5;
    case Equation::IV: return 0.25;
    case Equation::III: return 0.5;
    case Equation::II: return 1.0;
    case Equation::I: return 1.0;
    }
    return 1.0;
}

PhaseState multi_transform(Equation eq, Direction dir, const PhaseState& state, const AuxParams& aux,
                           const EllipticContext* ctx, std::span<const Complex> hints) {
    std::size_t n = state.coords.size();
    if (state.momenta.size() != n)
        throw Error(ErrorKind::InvalidArgument, "coords and momenta differ in length");
    if (!hints.empty() && hints.size() != n)
        throw Error(ErrorKind::InvalidArgument, "one branch hint per component");
    PhaseState out;
    out.coords.resize(n);
    out.momenta.resize(n);

    if (dir == Direction::CalogeroToPainleve) {
        std::optional<EllipticContext> slot;
        const EllipticContext* c = ctx;
        if (eq == Equation::VI)
            c = &context_at(state.time, ctx, slot);
        for (std::size_t j = 0; j < n; ++j) {
            MuAffine m = mu_affine(eq, state.coords[j], state.time, aux, c);
            out.coords[j] = m.lambda;
            out.momenta[j] = m.slope * state.momenta[j] + m.offset;
        }
        out.time = painleve_time(eq, state.time, c);
    } else {
        Complex tau_or_t = state.time;
        std::optional<EllipticContext> slot;
        const EllipticContext* c = ctx;
        if (eq == Equation::VI) {
            if (!ctx)
                throw Error(ErrorKind::BadContext, "PVI needs a context to seed tau(t)");
            tau_or_t = time_map_pvi_inverse(state.time, ctx->tau(), ctx);
            c = &context_at(tau_or_t, ctx, slot);
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::optional<Complex> hint;
            if (!hints.empty())
                hint = hints[j];
            auto [q, p] = pq_of_lambdamu(eq, state.coords[j], state.momenta[j], tau_or_t, aux, c, hint);
            out.coords[j] = q;
            out.momenta[j] = p;
        }
        out.time = tau_or_t;
    }

    const CVec& lam = dir == Direction::CalogeroToPainleve ? out.coords : state.coords;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            if (std::abs(lam[j] - lam[k]) < kMapTol)
                throw Error(ErrorKind::TwoBodyCollision, "lambda_j = lambda_k");
    return out;
}

} // namespace pcc
