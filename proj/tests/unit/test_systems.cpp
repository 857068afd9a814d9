#include <optional>

#include <doctest.h>

#include "pcc/systems.hpp"
#include "pcc/verify.hpp"
#include "support/oracles.hpp"

using namespace pcc;

namespace {

PainleveParams pp(const AuxParams& aux, Equation eq) { return param_to_painleve(aux, eq); }

bool close(Complex a, Complex b, double tol = 1e-14) { return std::abs(a - b) <= tol; }

PhaseState permuted(const PhaseState& s, const std::vector<int>& perm) {
    PhaseState out = s;
    for (std::size_t j = 0; j < perm.size(); ++j) {
        out.coords[j] = s.coords[perm[j]];
        out.momenta[j] = s.momenta[perm[j]];
    }
    return out;
}

} // namespace

TEST_CASE("parameter relations") {
    auto p6 = pp({{"kappa0", 1.0}, {"kappa1", 1.0}, {"theta", 1.0}, {"kappa", 0.0}}, Equation::VI);
    CHECK(close(p6.alpha, 2.0));
    CHECK(close(p6.beta, -0.5));
    CHECK(close(p6.gamma, 0.5));
    CHECK(close(p6.delta, 0.0));

    auto p4 = pp({{"theta_inf", 0.0}, {"kappa0", 0.0}}, Equation::IV);
    CHECK(close(p4.alpha, 1.0));
    CHECK(close(p4.beta, 0.0));

    auto p3 = pp({{"eta_inf", 1.0}, {"theta_inf", 1.0}, {"eta0", 1.0}, {"theta0", 1.0}}, Equation::III);
    CHECK(close(p3.alpha, -4.0));
    CHECK(close(p3.beta, 8.0));
    CHECK(close(p3.gamma, 4.0));
    CHECK(close(p3.delta, -4.0));

    // PV: alpha = (kappa0 - theta1 + eta1)^2/2 style relations evaluated at a complex point
    AuxParams a5{{"kappa0", {0.3, 0.1}}, {"theta1", {0.2, -0.4}}, {"eta1", {0.7, 0.2}}, {"kappa", {-0.1, 0.5}}};
    auto p5 = pp(a5, Equation::V);
    CHECK(std::isfinite(std::abs(p5.alpha + p5.beta + p5.gamma + p5.delta)));

    CHECK_THROWS_AS(pp({{"alpha", 1.0}}, Equation::II), Error);
    try {
        pp({}, Equation::I);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedEquation);
    }
    try {
        pp({{"kappa0", 1.0}}, Equation::VI);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
    CHECK(missing_aux(Equation::VI, {{"kappa0", 1.0}}) == std::vector<std::string>{"kappa1", "theta", "kappa"});
}

TEST_CASE("time gauge is fixed by equation and side") {
    using enum Equation;
    for (Equation eq : {I, II, III, IV, V, VI}) {
        auto aux = default_aux(eq);
        CHECK(make_system(eq, Side::Painleve, 1, aux).gauge() == TimeGauge::T);
        TimeGauge expect = eq == VI ? TimeGauge::Tau : (eq == V || eq == III) ? TimeGauge::LogT : TimeGauge::T;
        CHECK(make_system(eq, Side::Calogero, 1, aux).gauge() == expect);
    }
}

TEST_CASE("hand-evaluated Hamiltonians") {
    auto p1 = make_system(Equation::I, Side::Painleve, 1, {});
    CHECK(close(hamiltonian(p1, {{0.0}, {0.0}, 0.0}), 0.0));

    for (Complex alpha : {Complex(0.0), Complex(0.7, -0.2)}) {
        auto c2 = make_calogero_system({Equation::II, alpha, 0, 0, 0}, 1);
        CHECK(close(hamiltonian(c2, {{0.0}, {1.0}, 0.0}), 0.5));
    }

    // rank 2: -(1/2)(q1^4 + q2^4) plus g4^2/(q1 - q2)^2 over ordered pairs
    auto c2r2 = make_calogero_system({Equation::II, 0.0, 0, 0, 0}, 2, 1.0);
    CHECK(close(hamiltonian(c2r2, {{1.0, -1.0}, {0.0, 0.0}, 0.0}), -0.5));

    // PI: H = mu^2/2 - 2 lambda^3 - t lambda
    PhaseState s{{Complex(0.4, 0.3)}, {Complex(-0.2, 0.6)}, Complex(0.9, -0.1)};
    Complex l = s.coords[0], m = s.momenta[0], t = s.time;
    CHECK(close(hamiltonian(p1, s), m * m / 2.0 - 2.0 * l * l * l - t * l));
    Gradients g = hamiltonian_gradients(p1, s);
    CHECK(close(g.d_momenta[0], m));
    CHECK(close(g.d_coords[0], -6.0 * l * l - t));
}

TEST_CASE("PVI Calogero side: dH/dp = p and the tau-gauge flow") {
    auto sys = make_system(Equation::VI, Side::Calogero, 1, default_aux(Equation::VI));
    EllipticContext ctx(Complex{0.1, 1.1});
    PhaseState s{{Complex(0.3, 0.35)}, {Complex(0.4, -0.2)}, ctx.tau()};
    Gradients g = hamiltonian_gradients(sys, s, &ctx);
    CHECK(close(g.d_momenta[0], s.momenta[0]));
    PhaseVelocity v = canonical_field(sys, s, &ctx);
    CHECK(close(v.coords[0], s.momenta[0] / (2.0 * kPi * kI), 1e-15));
}

TEST_CASE("autonomous check along the flow") {
    auto p1 = make_system(Equation::I, Side::Painleve, 1, {});
    CHECK(std::abs(autonomous_check(p1, {{1.0}, {1.0}, 1.0})) < 1e-8);

    Sampler rng(21);
    auto c5 = make_system(Equation::V, Side::Calogero, 1, default_aux(Equation::V));
    for (int i = 0; i < 10; ++i)
        CHECK(std::abs(autonomous_check(c5, sample_calogero_state(Equation::V, 1, rng))) < 1e-6);

    auto c6 = make_system(Equation::VI, Side::Calogero, 1, default_aux(Equation::VI));
    for (int i = 0; i < 10; ++i) {
        PhaseState s = sample_calogero_state(Equation::VI, 1, rng);
        EllipticContext ctx(s.time);
        CHECK(std::abs(autonomous_check(c6, s, &ctx)) < 1e-5);
    }
}

TEST_CASE("gradients agree with finite differences for all 24 variants") {
    using enum Equation;
    for (Equation eq : {I, II, III, IV, V, VI})
        for (Side side : {Side::Painleve, Side::Calogero})
            for (int rank : {1, 3}) {
                auto r = run_gradient_suite(eq, side, rank, default_aux(eq), default_g4sq(), 30, 99);
                INFO(r.check_id << " " << r.max_error);
                CHECK(r.passed);
            }
}

TEST_CASE("uncoupled components add up") {
    using enum Equation;
    Sampler rng(4);
    for (Equation eq : {I, II, III, IV, V, VI})
        for (Side side : {Side::Painleve, Side::Calogero}) {
            auto one = make_system(eq, side, 1, default_aux(eq));
            auto two = make_system(eq, side, 2, default_aux(eq), 0.0);
            PhaseState s = side == Side::Painleve ? sample_painleve_state(eq, 2, rng) : sample_calogero_state(eq, 2, rng);
            EllipticContext ctx(eq == VI && side == Side::Calogero ? s.time : Complex{0, 1});
            const EllipticContext* c = &ctx;
            Complex sum = hamiltonian(one, {{s.coords[0]}, {s.momenta[0]}, s.time}, c) +
                          hamiltonian(one, {{s.coords[1]}, {s.momenta[1]}, s.time}, c);
            INFO(to_string(eq) << " " << to_string(side));
            CHECK(std::abs(hamiltonian(two, s, c) - sum) <= 1e-12 * std::max(1.0, std::abs(sum)));
        }
}

TEST_CASE("rank-3 Calogero Hamiltonians are symmetric") {
    using enum Equation;
    Sampler rng(8);
    for (Equation eq : {I, II, III, IV, V, VI}) {
        auto sys = make_system(eq, Side::Calogero, 3, default_aux(eq), default_g4sq());
        for (int i = 0; i < 5; ++i) {
            PhaseState s = sample_calogero_state(eq, 3, rng);
            EllipticContext ctx(eq == VI ? s.time : Complex{0, 1});
            Complex h = hamiltonian(sys, s, &ctx);
            double tol = 1e-12 * std::max(1.0, std::abs(h));
            INFO(to_string(eq));
            for (auto perm : {std::vector<int>{1, 0, 2}, {2, 1, 0}, {1, 2, 0}})
                CHECK(std::abs(hamiltonian(sys, permuted(s, perm), &ctx) - h) <= tol);
            if (eq == VI || eq == V || eq == IV) {
                PhaseState f = s;
                f.coords[1] = -f.coords[1];
                f.momenta[1] = -f.momenta[1];
                CHECK(std::abs(hamiltonian(sys, f, &ctx) - h) <= tol);
            }
        }
    }
}

TEST_CASE("singular points raise errors") {
    auto kind_of = [](auto&& f) -> std::optional<ErrorKind> {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return std::nullopt;
    };
    auto p6 = make_system(Equation::VI, Side::Painleve, 2, default_aux(Equation::VI), 0.7);
    CHECK(kind_of([&] { hamiltonian(p6, {{0.4, 0.4}, {1.0, 0.5}, Complex(0.3, 0.2)}); }) ==
          ErrorKind::TwoBodyCollision);

    auto c6 = make_system(Equation::VI, Side::Calogero, 1, default_aux(Equation::VI));
    EllipticContext ctx(Complex{0, 1.2});
    CHECK(kind_of([&] { hamiltonian(c6, {{0.0}, {1.0}, ctx.tau()}, &ctx); }) == ErrorKind::CoordinateSingularity);

    auto c4 = make_system(Equation::IV, Side::Calogero, 2, default_aux(Equation::IV), 0.7);
    CHECK(kind_of([&] { hamiltonian(c4, {{Complex(0.5, 0.1), Complex(0.5, 0.1)}, {0.0, 0.0}, 0.3}); }) ==
          ErrorKind::CoordinateSingularity);
    CHECK(kind_of([&] { hamiltonian(c4, {{0.5}, {0.0}, 0.3}); }) == ErrorKind::InvalidArgument);
}
