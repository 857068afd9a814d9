#include <array>
#include <optional>

#include <doctest.h>

#include "pcc/transforms.hpp"
#include "pcc/verify.hpp"
#include "support/oracles.hpp"

using namespace pcc;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

// distance from z to the lattice Z + tau Z
double lattice_distance(Complex z, Complex tau) {
    double n = std::round(z.imag() / tau.imag());
    Complex r = z - n * tau;
    return std::abs(r - std::round(r.real()));
}

} // namespace

TEST_CASE("PVI time map, inverse and Jacobian") {
    Complex tau{0, 1.1};
    Complex t = time_map_pvi(tau);
    CHECK(close(time_map_pvi_inverse(t, Complex{0.05, 1.0}), tau, 1e-9));

    EllipticContext c8(Complex{0, 8});
    Complex x = std::exp(kPi * kI * c8.tau());
    CHECK(std::abs(time_map_pvi(c8.tau()) - 1.0 - 16.0 * x) < 1e-12);

    for (Complex tz : {Complex(0, 1), Complex(0.2, 0.9), Complex(-0.3, 1.4)}) {
        Complex fd = oracle::central([](Complex z) { return time_map_pvi(z); }, tz, 1e-5);
        Complex j = jacobian_dtau_dt(tz);
        CHECK(close(1.0 / j, fd, 1e-6));
        EllipticContext ctx(tz);
        Complex formula = kPi * kI / (ctx.t() * (ctx.t() - 1.0) * (ctx.e(2) - ctx.e(1)));
        CHECK(close(j, formula, 1e-14));
    }
    CHECK(kind_of([] { time_map_pvi_inverse(1.0, Complex{0, 1}); }) == ErrorKind::MapSingularity);
}

TEST_CASE("lambda(q) spot values") {
    CHECK(close(lambda_of_q(Equation::IV, 2.0, 0.0), 1.0, 1e-15));
    CHECK(close(lambda_of_q(Equation::III, 0.0, 1.0), 1.0, 1e-15));
    CHECK(std::abs(lambda_of_q(Equation::V, kPi * kI, 1.0)) < 1e-15);
    Complex q{0.8, 0.3};
    Complex c = std::cosh(q / 2.0) / std::sinh(q / 2.0);
    CHECK(close(lambda_of_q(Equation::V, q, 1.0), c * c, 1e-14));
    CHECK(close(lambda_of_q(Equation::II, q, 0.3), q, 0.0));
    CHECK(kind_of([] { lambda_of_q(Equation::V, 2.0 * kPi * kI, 1.0); }) == ErrorKind::MapSingularity);
    EllipticContext ctx(Complex{0, 1});
    CHECK(kind_of([&] { lambda_of_q(Equation::VI, Complex(1.0, 1.0), ctx.tau(), &ctx); }) ==
          ErrorKind::MapSingularity);
}

TEST_CASE("q(lambda) inverts lambda(q) on the hinted branch") {
    using enum Equation;
    Sampler rng(12);
    for (Equation eq : {I, II, III, IV, V, VI})
        for (int i = 0; i < 50; ++i) {
            PhaseState s = sample_calogero_state(eq, 1, rng);
            Complex q = s.coords[0];
            EllipticContext ctx(eq == VI ? s.time : Complex{0, 1});
            Complex lam = lambda_of_q(eq, q, s.time, &ctx);
            Complex back = q_of_lambda(eq, lam, s.time, &ctx, q);
            INFO(to_string(eq) << " q=" << fmt(q));
            CHECK(std::abs(back - q) < 1e-9);
            CHECK(std::abs(lambda_of_q(eq, q_of_lambda(eq, lam, s.time, &ctx), s.time, &ctx) - lam) <
                  1e-9 * std::max(1.0, std::abs(lam)));
        }
}

TEST_CASE("PVI: q(t) is the half period w3") {
    for (Complex tau : {Complex(0, 1), Complex(0.1, 1.2), Complex(-0.25, 0.9)}) {
        EllipticContext ctx(tau);
        Complex q = q_of_lambda(Equation::VI, ctx.t(), tau, &ctx);
        CHECK(std::min(lattice_distance(q - ctx.half_period(3), tau), lattice_distance(q + ctx.half_period(3), tau)) <
              1e-8);
    }
}

TEST_CASE("PVI: q(lambda) agrees with a quadrature of the Abel map") {
    // q(l1) - q(l0) = int dz / (2 sqrt(e2 - e1) sqrt(z (z - 1) (z - t))) along a segment
    Sampler rng(31);
    for (Complex tau : {Complex(0, 1.1), Complex(0.2, 0.95)}) {
        EllipticContext ctx(tau);
        Complex t = ctx.t(), k = ctx.e(2) - ctx.e(1);
        for (int i = 0; i < 6; ++i) {
            Complex q0 = rng.uniform(0.1, 0.4) + rng.uniform(0.1, 0.4) * tau;
            WpValue w = weierstrass(q0, ctx);
            Complex l0 = (w.p - ctx.e(1)) / k;
            Complex l1 = l0 + rng.box(-0.15, 0.15, -0.15, 0.15);
            // branch of the root fixed once from P'(q0), then followed continuously
            Complex root_k = std::sqrt(k);
            auto P = [&](Complex z) { return z * (z - 1.0) * (z - t); };
            Complex root = std::sqrt(P(l0));
            if (std::abs(2.0 * root_k * root * k - w.dp) > std::abs(2.0 * root_k * root * k + w.dp))
                root = -root;
            const int n = 2000;
            Complex sum = 0.0, dz = (l1 - l0) / double(n);
            auto integrand = [&](Complex z) {
                Complex r = std::sqrt(P(z));
                if (std::abs(r - root) > std::abs(r + root))
                    r = -r;
                root = r;
                return 1.0 / (2.0 * root_k * r);
            };
            // composite Simpson
            sum += integrand(l0);
            for (int j = 1; j < n; ++j)
                sum += (j % 2 ? 4.0 : 2.0) * integrand(l0 + double(j) * dz);
            sum += integrand(l1);
            Complex q_quad = q0 + sum * dz / 3.0;
            Complex q = q_of_lambda(Equation::VI, l1, tau, &ctx, q_quad);
            CHECK(std::abs(q - q_quad) < 1e-6);
        }
    }
}

TEST_CASE("mu(q, p) spot values and the affine inverse") {
    CHECK(close(mu_of_pq(Equation::II, 1.0, 0.0, 2.0, {{"alpha", 0.3}}), 2.0, 1e-15));
    CHECK(close(mu_of_pq(Equation::IV, 2.0, 0.0, 0.0, {{"kappa0", 0.5}, {"theta_inf", 0.0}}), 0.5, 1e-15));
    CHECK(close(mu_of_pq(Equation::I, 0.4, 0.7, 2.0, {}), 0.7, 0.0));
    auto [q, p] = pq_of_lambdamu(Equation::II, 1.0, 2.0, 2.0, {{"alpha", 0.3}});
    CHECK(close(q, 1.0, 1e-15));
    CHECK(std::abs(p) < 1e-15);
    CHECK(one_form_constant(Equation::VI) == 1.0);
    CHECK(one_form_constant(Equation::V) == 0.5);
    CHECK(one_form_constant(Equation::IV) == 0.25);
    CHECK(one_form_constant(Equation::III) == 0.5);
    CHECK(one_form_constant(Equation::II) == 1.0);
    CHECK(one_form_constant(Equation::I) == 1.0);
}

TEST_CASE("PVI mu is affine in p with slope (e2-e1)/P'(q)") {
    EllipticContext ctx(Complex{0.1, 1.05});
    AuxParams aux = default_aux(Equation::VI);
    Complex q{0.27, 0.0}, p{0.4, -0.3};
    q += 0.33 * ctx.tau();
    MuAffine m = mu_affine(Equation::VI, q, ctx.tau(), aux, &ctx);
    WpValue w = weierstrass(q, ctx);
    Complex k = ctx.e(2) - ctx.e(1);
    CHECK(close(m.slope, k / w.dp, 1e-12));
    CHECK(close(m.lambda, (w.p - ctx.e(1)) / k, 1e-12));
    CHECK(close(mu_of_pq(Equation::VI, q, p, ctx.tau(), aux, &ctx), m.slope * p + m.offset, 1e-12));
}

TEST_CASE("phase-space round trips for ranks 1 and 3") {
    using enum Equation;
    Sampler rng(77);
    for (Equation eq : {I, II, III, IV, V, VI})
        for (int rank : {1, 3})
            for (int i = 0; i < 50; ++i) {
                PhaseState c = sample_calogero_state(eq, rank, rng);
                EllipticContext ctx(eq == VI ? c.time + Complex(0.01, 0.02) : Complex{0, 1});
                PhaseState pain = multi_transform(eq, Direction::CalogeroToPainleve, c, default_aux(eq));
                PhaseState back =
                    multi_transform(eq, Direction::PainleveToCalogero, pain, default_aux(eq), &ctx, c.coords);
                INFO(to_string(eq) << " rank " << rank);
                CHECK(std::abs(back.time - c.time) < 1e-9);
                for (int j = 0; j < rank; ++j) {
                    CHECK(std::abs(back.coords[j] - c.coords[j]) < 1e-9);
                    CHECK(std::abs(back.momenta[j] - c.momenta[j]) < 1e-9 * std::max(1.0, std::abs(c.momenta[j])));
                }
            }
}

TEST_CASE("multi_transform is componentwise") {
    using enum Equation;
    Sampler rng(5);
    for (Equation eq : {I, II, III, IV, V, VI}) {
        PhaseState c = sample_calogero_state(eq, 3, rng);
        AuxParams aux = default_aux(eq);
        PhaseState img = multi_transform(eq, Direction::CalogeroToPainleve, c, aux);
        for (int j = 0; j < 3; ++j) {
            PhaseState one{{c.coords[j]}, {c.momenta[j]}, c.time};
            PhaseState o = multi_transform(eq, Direction::CalogeroToPainleve, one, aux);
            CHECK(o.coords[0] == img.coords[j]);
            CHECK(o.momenta[0] == img.momenta[j]);
            CHECK(o.time == img.time);
        }
        PhaseState sw = c;
        std::swap(sw.coords[0], sw.coords[2]);
        std::swap(sw.momenta[0], sw.momenta[2]);
        PhaseState simg = multi_transform(eq, Direction::CalogeroToPainleve, sw, aux);
        CHECK(simg.coords[0] == img.coords[2]);
        CHECK(simg.momenta[2] == img.momenta[0]);
    }
    PhaseState clash{{Complex(0.4, 0.2), Complex(0.4, 0.2)}, {0.1, 0.2}, 0.5};
    CHECK(kind_of([&] { multi_transform(IV, Direction::CalogeroToPainleve, clash, default_aux(IV)); }) ==
          ErrorKind::TwoBodyCollision);
}

TEST_CASE("vector-field pushforward") {
    using enum Equation;
    for (Equation eq : {I, II, III, IV, V, VI})
        for (int rank : {1, 3}) {
            auto r = run_correspondence_suite(eq, rank, default_aux(eq), default_g4sq(), rank == 1 ? 100 : 50, 3);
            INFO(r.check_id << " " << r.max_error);
            CHECK(r.passed);
            if (eq == I)
                CHECK(r.max_error < 1e-8);
        }
}

namespace {

// pushforward of `cal`'s field through the map built from `aux`, compared with
// `pain`'s field; Calogero time is t here (equations other than VI)
double mismatch(Equation eq, const SystemDescriptor& cal, const SystemDescriptor& pain, const AuxParams& aux,
                const PhaseState& c) {
    const double h = 1e-6;
    PhaseVelocity v = canonical_field(cal, c);
    auto phi = [&](const PhaseState& s) { return multi_transform(eq, Direction::CalogeroToPainleve, s, aux); };
    auto bumped = [&](double d) {
        PhaseState m = c;
        for (std::size_t j = 0; j < c.coords.size(); ++j) {
            m.coords[j] += d * v.coords[j];
            m.momenta[j] += d * v.momenta[j];
        }
        m.time += d;
        return phi(m);
    };
    PhaseState up = bumped(h), dn = bumped(-h), img = phi(c);
    PhaseVelocity w = canonical_field(pain, img);
    double worst = 0.0;
    for (std::size_t j = 0; j < c.coords.size(); ++j) {
        Complex dl = (up.coords[j] - dn.coords[j]) / (2 * h), dm = (up.momenta[j] - dn.momenta[j]) / (2 * h);
        worst = std::max({worst, std::abs(dl - w.coords[j]) / std::max(1.0, std::abs(w.coords[j])),
                          std::abs(dm - w.momenta[j]) / std::max(1.0, std::abs(w.momenta[j]))});
    }
    return worst;
}

} // namespace

TEST_CASE("pushforward check separates matching and mismatched systems") {
    using enum Equation;
    Sampler rng(17);
    for (Equation eq : {II, III, IV, V}) {
        INFO(to_string(eq));
        AuxParams good = default_aux(eq), bad = good;
        auto key = required_aux(eq).front();
        bad.set(key, good.get(key) + 0.1);
        for (int i = 0; i < 5; ++i) {
            PhaseState c = sample_calogero_state(eq, 1, rng);
            auto pain = make_system(eq, Side::Painleve, 1, good);
            CHECK(mismatch(eq, make_system(eq, Side::Calogero, 1, good), pain, good, c) < 1e-5);
            CHECK(mismatch(eq, make_system(eq, Side::Calogero, 1, bad), pain, good, c) > 1e-3);
        }
        // pair coupling present on one side only
        PhaseState c3 = sample_calogero_state(eq, 3, rng);
        auto pain3 = make_system(eq, Side::Painleve, 3, good, 0.0);
        CHECK(mismatch(eq, make_system(eq, Side::Calogero, 3, good, 0.0), pain3, good, c3) < 1e-5);
        CHECK(mismatch(eq, make_system(eq, Side::Calogero, 3, good, default_g4sq()), pain3, good, c3) > 1e-3);
    }
}

TEST_CASE("PV pair potential in lambda form") {
    Sampler rng(2);
    for (int i = 0; i < 50; ++i) {
        Complex q1 = rng.box(0.3, 2.0, -1.0, 1.0), q2 = rng.box(-2.0, -0.3, -1.0, 1.0);
        Complex l1 = lambda_of_q(Equation::V, q1, 1.0), l2 = lambda_of_q(Equation::V, q2, 1.0);
        Complex a = std::sinh((q1 - q2) / 2.0), b = std::sinh((q1 + q2) / 2.0);
        Complex lhs = 1.0 / (a * a) + 1.0 / (b * b);
        Complex rhs = 2.0 * (l1 - 1.0) * (l2 - 1.0) * (l1 + l2) / ((l1 - l2) * (l1 - l2));
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}
