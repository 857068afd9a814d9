#include <doctest.h>

#include "pcc/dynamics.hpp"
#include "pcc/io.hpp"
#include "pcc/verify.hpp"

using namespace pcc;

namespace {

// momentum giving velocity `dl` on the Painleve side (dH/dmu is affine in mu)
Complex momentum_for(const SystemDescriptor& sys, Complex l, Complex dl, Complex t) {
    auto vel = [&](Complex m) { return hamiltonian_gradients(sys, {{l}, {m}, t}).d_momenta[0]; };
    Complex b = vel(0.0), a = vel(1.0) - b;
    return (dl - b) / a;
}

Trajectory fake(const SystemDescriptor& sys, int n, double t1) {
    Trajectory tr;
    tr.system = sys;
    tr.t_start = 0.0;
    tr.t_end = t1;
    for (int i = 0; i < n; ++i) {
        double s = double(i) / (n - 1);
        tr.samples.push_back({{0.0}, {0.0}, s * t1});
        tr.rates.push_back({{0.0}, {0.0}});
        tr.path.push_back(s);
    }
    return tr;
}

} // namespace

TEST_CASE("zero-length integration returns the initial state") {
    auto sys = make_system(Equation::I, Side::Painleve, 1, {});
    PhaseState s{{0.3}, {0.1}, Complex(0.2, 0.1)};
    Trajectory tr = integrate(sys, s, s.time);
    CHECK(tr.termination == Termination::Completed);
    REQUIRE(tr.samples.size() == 1);
    CHECK(tr.samples[0].coords[0] == s.coords[0]);
    CHECK(tr.samples[0].momenta[0] == s.momenta[0]);
}

TEST_CASE("rational PII solution lambda = -1/t") {
    auto sys = make_system(Equation::II, Side::Painleve, 1, {{"alpha", 1.0}});
    for (Complex t1 : {Complex(2.0, 0.0), Complex(1.5, 0.8), Complex(0.6, -0.7)}) {
        Complex t0 = 1.0;
        PhaseState s{{-1.0}, {momentum_for(sys, -1.0, 1.0, t0)}, t0};
        Trajectory tr = integrate(sys, s, t1);
        REQUIRE(tr.termination == Termination::Completed);
        CHECK(std::abs(tr.samples.back().coords[0] + 1.0 / t1) < 1e-9);
        CHECK(tr.samples.back().time == t1);
    }
}

TEST_CASE("self-convergence under tolerance refinement") {
    using enum Equation;
    for (Equation eq : {I, II, III, IV, V}) {
        auto sys = make_system(eq, Side::Calogero, 2, default_aux(eq), default_g4sq());
        Sampler rng(40 + int(eq));
        PhaseState s = sample_calogero_state(eq, 2, rng);
        IntegrateOptions loose, tight;
        loose.rel_tol = 1e-7, loose.abs_tol = 1e-9;
        tight.rel_tol = 1e-12, tight.abs_tol = 1e-14;
        Complex t1 = s.time + Complex(0.2, 0.1);
        Trajectory a = integrate(sys, s, t1, loose), b = integrate(sys, s, t1, tight);
        REQUIRE(a.termination == Termination::Completed);
        REQUIRE(b.termination == Termination::Completed);
        INFO(to_string(eq));
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(a.samples.back().coords[j] - b.samples.back().coords[j]) < 1e-5);
        CHECK(b.samples.size() > a.samples.size());
        for (std::size_t i = 1; i < b.path.size(); ++i)
            CHECK(b.path[i] > b.path[i - 1]);
    }
}

TEST_CASE("dense output reproduces the accepted steps") {
    auto sys = make_system(Equation::I, Side::Painleve, 1, {});
    Trajectory tr = integrate(sys, {{0.2}, {0.1}, 0.0}, 1.0);
    for (std::size_t i = 0; i < tr.samples.size(); i += 5) {
        PhaseState d = dense_state(tr, tr.path[i]);
        CHECK(std::abs(d.coords[0] - tr.samples[i].coords[0]) < 1e-14);
        CHECK(std::abs(d.time - tr.samples[i].time) < 1e-14);
    }
}

TEST_CASE("a pole stops the integration with the partial trajectory") {
    auto sys = make_system(Equation::I, Side::Painleve, 1, {});
    Trajectory tr = integrate(sys, {{2.0}, {0.0}, 0.0}, 3.0);
    CHECK(tr.termination == Termination::PoleDetected);
    CHECK(tr.termination_time.real() > 0.8);
    CHECK(tr.termination_time.real() < 0.9);
    CHECK(tr.samples.size() > 20);
    CHECK(std::abs(tr.samples.back().coords[0]) > 1e3);
}

TEST_CASE("bad inputs") {
    auto sys = make_system(Equation::I, Side::Painleve, 2, {});
    CHECK_THROWS_AS(integrate(sys, {{0.2}, {0.1}, 0.0}, 1.0), Error);
    IntegrateOptions o;
    o.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate(sys, {{0.2, 0.3}, {0.1, 0.0}, 0.0}, 1.0, o), Error);
}

TEST_CASE("Painleve residual") {
    auto p1 = make_system(Equation::I, Side::Painleve, 1, {});
    Trajectory tr = integrate(p1, {{0.3}, {-0.2}, 0.0}, Complex(0.8, 0.3));
    CHECK(painleve_residual(Equation::I, tr) < 1e-6);

    // lambda = 0 is not a solution: lambda'' - 6 lambda^2 - t = -t
    double r = painleve_residual(Equation::I, fake(p1, 40, 1.0));
    CHECK(r > 0.9);
    CHECK(r <= 1.0 + 1e-12);

    try {
        painleve_residual(Equation::I, fake(p1, 10, 1.0));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooSparse);
    }

    using enum Equation;
    for (Equation eq : {I, II, III, IV, V, VI}) {
        auto rep = run_residual_check(eq, default_aux(eq));
        INFO(rep.check_id << " " << rep.max_error);
        CHECK(rep.passed);
    }
}

TEST_CASE("integrating either side gives the same endpoint") {
    using enum Equation;
    for (Equation eq : {I, II, III, IV, V, VI})
        for (Complex arc : {Complex(0.3, 0.0), Complex(0.0, -0.3)}) {
            auto r = run_dynamic_correspondence(eq, 1, default_aux(eq), 0.0, default_dynamic_initial(eq), arc);
            INFO(r.check_id << " " << r.max_error);
            CHECK(r.passed);
        }
}

TEST_CASE("trajectory CSV and JSON round trip") {
    auto sys = make_system(Equation::IV, Side::Calogero, 2, default_aux(Equation::IV), default_g4sq());
    Sampler rng(3);
    PhaseState s = sample_calogero_state(Equation::IV, 2, rng);
    Trajectory tr = integrate(sys, s, s.time + Complex(0.1, 0.05));

    std::string csv = trajectory_to_csv(tr);
    CHECK(csv.rfind("re_t,im_t,re_q1,im_q1,re_q2,im_q2,re_p1,im_p1,re_p2,im_p2\n", 0) == 0);
    TrajectoryTable table = read_trajectory_csv(csv);
    REQUIRE(table.samples.size() == tr.samples.size());
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        CHECK(table.samples[i].time == tr.samples[i].time);
        CHECK(table.samples[i].coords == tr.samples[i].coords);
        CHECK(table.samples[i].momenta == tr.samples[i].momenta);
    }

    Trajectory back = read_trajectory_json(trajectory_to_json(tr));
    CHECK(back.system.equation == Equation::IV);
    CHECK(back.system.side == Side::Calogero);
    CHECK(back.system.rank == 2);
    CHECK(back.system.g4sq == default_g4sq());
    CHECK(back.system.params.alpha == sys.params.alpha);
    CHECK(back.termination == tr.termination);
    REQUIRE(back.samples.size() == tr.samples.size());
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        CHECK(back.samples[i].time == tr.samples[i].time);
        CHECK(back.samples[i].coords == tr.samples[i].coords);
        CHECK(back.samples[i].momenta == tr.samples[i].momenta);
    }
    CHECK(trajectory_to_json(back).size() > 0);

    auto p1 = make_system(Equation::I, Side::Painleve, 1, {});
    Trajectory t1 = integrate(p1, {{0.0}, {0.1}, 0.0}, 0.5);
    CHECK(trajectory_to_csv(t1).rfind("re_t,im_t,re_l1,im_l1,re_m1,im_m1\n", 0) == 0);
}

TEST_CASE("parsing helpers") {
    CHECK(parse_complex("1") == Complex(1, 0));
    CHECK(parse_complex("-0.5i") == Complex(0, -0.5));
    CHECK(parse_complex("1+2i") == Complex(1, 2));
    CHECK(parse_complex("2.5e-1-3i") == Complex(0.25, -3));
    CHECK(parse_complex("1e+2+1e-2i") == Complex(100, 0.01));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("[1, -2]") == Complex(1, -2));
    CHECK_FALSE(parse_complex("abc"));
    CHECK_FALSE(parse_complex(""));

    AuxParams a = parse_params_inline("kappa0=1, kappa1=1+0.5i theta=2");
    CHECK(a.get("kappa1") == Complex(1, 0.5));
    CHECK(a.get("theta") == Complex(2, 0));
    CHECK_THROWS_AS(parse_params_inline("kappa0"), Error);

    AuxParams j = parse_params_json(R"({"kappa0": [1, 2], "theta": 0.5, "g4sq": [0.7, 0]})");
    CHECK(j.get("kappa0") == Complex(1, 2));
    CHECK(j.get("g4sq") == Complex(0.7, 0));
    CHECK_THROWS_AS(parse_params_json("[1,2]"), Error);

    PhaseState s = parse_state_json(R"({"time": [0, 1], "coords": [[0.1, 0.2], 0.3], "momenta": [0, [1, 1]]})");
    CHECK(s.time == Complex(0, 1));
    CHECK(s.coords == CVec{{0.1, 0.2}, {0.3, 0}});
    CHECK(s.momenta == CVec{{0, 0}, {1, 1}});
    CHECK_THROWS_AS(parse_state_json(R"({"coords": [1]})"), Error);

    CHECK(painleve_params_json({Equation::VI, 2.0, -0.5, 0.5, 0.0}) ==
          R"({"alpha":[2,0],"beta":[-0.5,0],"gamma":[0.5,0],"delta":[0,0]})");
}
