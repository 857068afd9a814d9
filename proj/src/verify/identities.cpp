#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pcc/verify.hpp"

namespace pcc {

namespace {

constexpr int kPoints = 60;

std::string tau_label(Complex tau) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "tau=%g%+gi", tau.real(), tau.imag());
    return buf;
}

Complex cell_point(Sampler& s, Complex tau) {
    return s.uniform(0.08, 0.42) + s.uniform(0.08, 0.42) * tau;
}

// points spread over the whole period cell, kept off the lattice and half periods
Complex spread_point(Sampler& s, Complex tau) {
    for (;;) {
        double a = s.uniform(-0.5, 0.5), b = s.uniform(-0.5, 0.5);
        bool near = false;
        for (double x : {-0.5, 0.0, 0.5})
            for (double y : {-0.5, 0.0, 0.5})
                if (std::hypot(a - x, b - y) < 0.06)
                    near = true;
        if (!near)
            return a + b * tau;
    }
}

template <class F>
double worst_over(Sampler& s, F&& f) {
    double worst = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        double e = f(s);
        if (!(e <= worst))
            worst = std::isnan(e) ? NAN : std::max(worst, e);
        if (std::isnan(worst))
            return worst;
    }
    return worst;
}

Complex h_of(Complex u, const EllipticContext& ctx) {
    ThetaValue th = theta(u + ctx.half_period(1), ctx);
    return th.du / th.value;
}

Complex g_of(Complex u, const EllipticContext& ctx) {
    FValue v = f_and_derivatives(u, ctx);
    return v.f_tau / v.f_u;
}

void suite_for(const EllipticContext& ctx, std::uint64_t seed, std::vector<CheckReport>& out) {
    const Complex tau = ctx.tau();
    const std::string tag = "/" + tau_label(tau);
    const std::map<std::string, std::string> meta{{"tau", fmt(tau)}};
    auto add = [&](const std::string& name, double err, double tol) {
        out.push_back(make_report("identities/" + name + tag, err, tol, kPoints, meta));
    };
    Sampler s(seed);

    add("periodicity", worst_over(s, [&](Sampler& r) {
            Complex u = spread_point(r, tau);
            Complex p = weierstrass_p(u, ctx);
            return std::max(rel_err(weierstrass_p(u + 1.0, ctx), p), rel_err(weierstrass_p(u + tau, ctx), p));
        }), 1e-11);

    add("addition", worst_over(s, [&](Sampler& r) {
            Complex u = cell_point(r, tau), v = spread_point(r, tau);
            WpValue a = weierstrass(u, ctx), b = weierstrass(v, ctx);
            Complex lhs = weierstrass_p(u - v, ctx) + weierstrass_p(u + v, ctx);
            Complex d = a.p - b.p;
            Complex rhs = -2.0 * a.p - 2.0 * b.p + (a.dp * a.dp + b.dp * b.dp) / (2.0 * d * d);
            return rel_err(rhs, lhs);
        }), 1e-9);

    add("shift", worst_over(s, [&](Sampler& r) {
            Complex u = spread_point(r, tau);
            Complex p = weierstrass_p(u, ctx);
            double worst = 0.0;
            for (int j = 1; j <= 3; ++j) {
                int k = j % 3 + 1, l = (j + 1) % 3 + 1;
                Complex ej = ctx.e(j);
                Complex rhs = ej + (ej - ctx.e(k)) * (ej - ctx.e(l)) / (p - ej);
                worst = std::max(worst, rel_err(shifted_p(u, j, ctx), rhs));
            }
            return worst;
        }), 1e-9);

    add("cubic", worst_over(s, [&](Sampler& r) {
            Complex u = spread_point(r, tau);
            WpValue w = weierstrass(u, ctx);
            Complex rhs = 4.0 * (w.p - ctx.e(1)) * (w.p - ctx.e(2)) * (w.p - ctx.e(3));
            return rel_err(w.dp * w.dp, rhs);
        }), 1e-9);

    add("g-quasi-periodicity", worst_over(s, [&](Sampler& r) {
            Complex u = cell_point(r, tau);
            Complex g = g_of(u, ctx);
            return std::max(rel_err(g_of(u + tau, ctx), g - 1.0), rel_err(g_of(u + 1.0, ctx), g));
        }), 1e-10);

    add("h-quasi-periodicity", worst_over(s, [&](Sampler& r) {
            Complex u = cell_point(r, tau);
            Complex h = h_of(u, ctx);
            return std::max(rel_err(h_of(u + tau, ctx), h - 2.0 * kPi * kI), rel_err(h_of(u + 1.0, ctx), h));
        }), 1e-10);

    // f_tau by a five-point tau difference against the theta log-derivative
    add("f-tau-theta", worst_over(s, [&](Sampler& r) {
            Complex u = cell_point(r, tau);
            const double h = 1e-4;
            auto f = [&](double k) { return f_and_derivatives(u, ctx.at(tau + k * h)).f; };
            Complex f_tau = (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h);
            Complex f_u = f_and_derivatives(u, ctx).f_u;
            return rel_err(2.0 * kPi * kI * f_tau / f_u, h_of(u, ctx));
        }), 1e-9);

    add("heat", worst_over(s, [&](Sampler& r) {
            Complex u = spread_point(r, tau);
            const double h = 1e-3;
            auto th = [&](double k) { return theta(u + k * h, ctx).value; };
            Complex d2 = (-th(-2) + 16.0 * th(-1) - 30.0 * th(0) + 16.0 * th(1) - th(2)) / (12.0 * h * h);
            Complex lhs = 4.0 * kPi * kI * theta(u, ctx).dtau;
            return std::abs(lhs - d2) / std::abs(d2);
        }), 1e-6);

    {
        CVec vals;
        for (int i = 0; i < kPoints; ++i) {
            Complex u = cell_point(s, tau);
            ThetaValue th = theta(u + ctx.half_period(1), ctx);
            Complex r = th.du / th.value;
            vals.push_back(th.duu / th.value - r * r + shifted_p(u, 3, ctx));
        }
        Complex mean = 0.0;
        for (Complex v : vals)
            mean += v;
        mean /= double(vals.size());
        double var = 0.0;
        for (Complex v : vals)
            var += std::norm(v - mean);
        add("constancy", std::sqrt(var / double(vals.size())), 1e-8);
    }

    // pair potential written through lambda = f(q)
    add("pair-lambda", worst_over(s, [&](Sampler& r) {
            Complex u = cell_point(r, tau), v = cell_point(r, tau);
            Complex e1 = ctx.e(1), k = ctx.e(2) - e1, t = ctx.t();
            Complex lu = (weierstrass_p(u, ctx) - e1) / k, lv = (weierstrass_p(v, ctx) - e1) / k;
            auto P = [&](Complex l) { return l * (l - 1.0) * (l - t); };
            Complex lhs = weierstrass_p(u - v, ctx) + weierstrass_p(u + v, ctx);
            Complex rhs = -4.0 * e1 + k * (2.0 * (P(lu) + P(lv)) / ((lu - lv) * (lu - lv)) - 2.0 * (lu + lv));
            return rel_err(rhs, lhs);
        }), 1e-9);
}

} // namespace

std::vector<CheckReport> run_identity_suite(const std::vector<EllipticContext>& contexts, std::uint64_t seed) {
    std::vector<CheckReport> out;
    for (std::size_t i = 0; i < contexts.size(); ++i)
        suite_for(contexts[i], seed * 1000003u + i, out);

    Sampler s(seed ^ 0x5157u);
    double worst = worst_over(s, [](Sampler& r) {
        Complex qj = r.box(0.3, 2.0, -1.0, 1.0), qk = r.box(-2.0, -0.3, -1.0, 1.0);
        auto lam = [](Complex q) {
            Complex c = std::cosh(q);
            return (c + 1.0) / (c - 1.0);
        };
        Complex lj = lam(qj), lk = lam(qk);
        Complex a = std::sinh((qj - qk) / 2.0), b = std::sinh((qj + qk) / 2.0);
        Complex lhs = 1.0 / (a * a) + 1.0 / (b * b);
        Complex rhs = 2.0 * (lj - 1.0) * (lk - 1.0) * (lj + lk) / ((lj - lk) * (lj - lk));
        return rel_err(rhs, lhs);
    });
    out.push_back(make_report("identities/sinh-pair", worst, 1e-10, kPoints));
    return out;
}

std::vector<CheckReport> run_asymptotic_checks() {
    const double pi2 = kPi * kPi;
    std::vector<CheckReport> out;
    EllipticContext c8(Complex{0, 8});
    Complex x8 = std::exp(kPi * kI * c8.tau());
    const std::map<std::string, std::string> m8{{"tau", fmt(c8.tau())}};
    out.push_back(make_report("asymptotics/e2-e1", std::abs(c8.e(2) - c8.e(1) + pi2), 1e-6, 1, m8));
    out.push_back(make_report("asymptotics/e1", std::abs(c8.e(1) - 2.0 * pi2 / 3.0), 1e-6, 1, m8));
    out.push_back(make_report("asymptotics/t", std::abs(c8.t() - 1.0 - 16.0 * pi2 * x8), 1e-8, 1, m8));

    // leading coefficient of t - 1, at a nome where it is resolvable
    EllipticContext c3(Complex{0, 3});
    Complex x3 = std::exp(kPi * kI * c3.tau());
    out.push_back(make_report("asymptotics/t-leading", std::abs((c3.t() - 1.0) / (16.0 * x3) - 1.0), 1e-3, 1,
                              {{"tau", fmt(c3.tau())}}));

    out.push_back(make_report(
        "asymptotics/shifted-w2",
        std::abs(shifted_p(0.25, 2, c8) - (-pi2 / 3.0 + 8.0 * pi2 * std::cos(2.0 * kPi * 0.25) * x8)), 1e-8, 1, m8));

    // P - (pi^2/sin^2 - pi^2/3) must fall by exp(-4 pi) per two units of Im tau
    std::vector<Complex> us{{0.13, 0.02}, {0.31, -0.05}, {0.22, 0.0}, {0.41, 0.03}};
    double worst = 0.0;
    std::map<std::string, std::string> meta;
    for (std::size_t i = 0; i < us.size(); ++i) {
        double prev = 0.0;
        for (double im : {4.0, 6.0, 8.0}) {
            double err = std::abs(p_trig_deviation(us[i], EllipticContext(Complex{0, im})));
            if (prev > 0) {
                double ratio = err / prev;
                worst = std::max(worst, std::abs(std::log(ratio / std::exp(-4.0 * kPi))));
                if (i == 0)
                    meta["ratio@" + fmt(im)] = fmt(ratio);
            }
            prev = err;
        }
    }
    out.push_back(make_report("asymptotics/trig-limit-rate", worst, std::log(3.0), long(us.size() * 3), meta));

    // coefficient of exp(2 pi i tau) in P(u+w2) + P(u+w3)
    EllipticContext c3b(Complex{0, 3});
    Complex Q = c3b.nome2();
    double wc = 0.0;
    for (Complex u : us) {
        Complex sum = shifted_p(u, 2, c3b) + shifted_p(u, 3, c3b);
        Complex coef = (sum + 2.0 * pi2 / 3.0) / Q;
        Complex expect = 16.0 * pi2 - 32.0 * pi2 * std::cos(4.0 * kPi * u);
        wc = std::max(wc, std::abs(coef / expect - 1.0));
    }
    out.push_back(make_report("asymptotics/pair-coefficient", wc, 1e-3, long(us.size()), {{"tau", fmt(c3b.tau())}}));
    return out;
}

} // namespace pcc
