#include <cmath>

#include "pcc/transforms.hpp"
#include "pcc/verify.hpp"

namespace pcc {

AuxParams default_aux(Equation eq) {
    switch (eq) {
    case Equation::VI:
        return {{"kappa0", {0.3, 0.1}}, {"kappa1", {0.7, -0.2}}, {"theta", {1.4, 0.3}}, {"kappa", {0.25, -0.15}}};
    case Equation::V:
        return {{"kappa0", {0.4, 0.1}}, {"theta1", {0.6, -0.3}}, {"eta1", {0.8, 0.2}}, {"kappa", {0.35, 0.05}}};
    case Equation::IV:
        return {{"kappa0", {0.45, -0.1}}, {"theta_inf", {0.3, 0.2}}};
    case Equation::III:
        return {{"eta_inf", {0.9, 0.1}}, {"theta_inf", {0.4, -0.2}}, {"eta0", {0.7, 0.3}}, {"theta0", {0.5, 0.1}}};
    case Equation::II:
        return {{"alpha", {0.35, 0.15}}};
    case Equation::I:
        return {};
    }
    return {};
}

Complex default_g4sq() { return {0.7, 0.0}; }

PhaseState sample_calogero_state(Equation eq, int rank, Sampler& s) {
    PhaseState st;
    // one disjoint bin per particle keeps q_j - q_k at least 0.05 apart
    auto bin = [&](double lo, double hi, int j) {
        double w = (hi - lo) / rank;
        return s.uniform(lo + w * j, lo + w * (j + 1) - 0.05);
    };
    switch (eq) {
    case Equation::VI: {
        st.time = s.box(-0.2, 0.2, 0.9, 1.3);
        for (int j = 0; j < rank; ++j)
            st.coords.push_back(bin(0.06, 0.44, j) + s.uniform(0.08, 0.42) * st.time);
        break;
    }
    case Equation::V:
        st.time = s.box(0.5, 1.5, -0.5, 0.5);
        for (int j = 0; j < rank; ++j)
            st.coords.push_back({bin(0.4, 2.2, j), s.uniform(-1.0, 1.0)});
        break;
    case Equation::IV:
        st.time = s.box(-1.0, 1.0, -1.0, 1.0);
        for (int j = 0; j < rank; ++j)
            st.coords.push_back({bin(0.5, 2.3, j), s.uniform(-0.8, 0.8)});
        break;
    case Equation::III:
        st.time = s.box(0.5, 1.5, -0.5, 0.5);
        for (int j = 0; j < rank; ++j)
            st.coords.push_back({bin(-1.0, 1.0, j), s.uniform(-1.0, 1.0)});
        break;
    case Equation::II:
    case Equation::I:
        st.time = s.box(-1.0, 1.0, -1.0, 1.0);
        for (int j = 0; j < rank; ++j)
            st.coords.push_back({bin(-1.2, 1.2, j), s.uniform(-1.0, 1.0)});
        break;
    }
    for (int j = 0; j < rank; ++j)
        st.momenta.push_back(s.box(-1.0, 1.0, -1.0, 1.0));
    return st;
}

PhaseState sample_painleve_state(Equation eq, int rank, Sampler& s) {
    PhaseState c = sample_calogero_state(eq, rank, s);
    return multi_transform(eq, Direction::CalogeroToPainleve, c, default_aux(eq));
}

CheckReport run_gradient_suite(Equation eq, Side side, int rank, const AuxParams& aux, Complex g4sq, int n_points,
                               std::uint64_t seed) {
    SystemDescriptor sys = make_system(eq, side, rank, aux, g4sq);
    Sampler s(seed);
    const double h = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < n_points; ++i) {
        PhaseState st = side == Side::Calogero ? sample_calogero_state(eq, rank, s) : sample_painleve_state(eq, rank, s);
        Gradients g = hamiltonian_gradients(sys, st);
        for (int j = 0; j < rank; ++j)
            for (int which = 0; which < 2; ++which) {
                auto bump = [&](double d) {
                    PhaseState m = st;
                    (which == 0 ? m.coords : m.momenta)[j] += d;
                    return hamiltonian(sys, m);
                };
                Complex fd = (bump(h) - bump(-h)) / (2.0 * h);
                Complex an = which == 0 ? g.d_coords[j] : g.d_momenta[j];
                worst = std::max(worst, std::abs(an - fd) / std::max({1.0, std::abs(an), std::abs(fd)}));
            }
    }
    std::string id = std::string("gradient/") + to_string(eq) + "/" + to_string(side) + "/rank" + std::to_string(rank);
    return make_report(id, worst, 1e-6, long(n_points) * rank * 2, {{"step", fmt(h)}, {"seed", std::to_string(seed)}});
}

namespace {

struct Image {
    CVec lambda, mu;
    Complex t;
};

Image phi(Equation eq, const AuxParams& aux, const PhaseState& st, const EllipticContext* ctx) {
    PhaseState out = multi_transform(eq, Direction::CalogeroToPainleve, st, aux, ctx);
    return {out.coords, out.momenta, out.time};
}

} // namespace

double pushforward_error(Equation eq, const AuxParams& aux, Complex g4sq, const PhaseState& st,
                         const EllipticContext* ctx, double h) {
    int rank = int(st.coords.size());
    SystemDescriptor cal = make_system(eq, Side::Calogero, rank, aux, g4sq);
    SystemDescriptor pain = make_system(eq, Side::Painleve, rank, aux, g4sq);
    PhaseVelocity v = canonical_field(cal, st, ctx);
    auto moved = [&](double d) {
        PhaseState m = st;
        for (int j = 0; j < rank; ++j) {
            m.coords[j] += d * v.coords[j];
            m.momenta[j] += d * v.momenta[j];
        }
        m.time += d;
        return phi(eq, aux, m, ctx);
    };
    Image plus = moved(h), minus = moved(-h), at = phi(eq, aux, st, ctx);
    Complex dtdT = (plus.t - minus.t) / (2.0 * h);
    PhaseState image{at.lambda, at.mu, at.t};
    PhaseVelocity target = canonical_field(pain, image);
    double worst = 0.0;
    for (int j = 0; j < rank; ++j) {
        Complex dl = (plus.lambda[j] - minus.lambda[j]) / (2.0 * h) / dtdT;
        Complex dm = (plus.mu[j] - minus.mu[j]) / (2.0 * h) / dtdT;
        worst = std::max(worst, rel_err(dl, target.coords[j]));
        worst = std::max(worst, rel_err(dm, target.momenta[j]));
    }
    return worst;
}

CheckReport run_correspondence_suite(Equation eq, int rank, const AuxParams& aux, Complex g4sq, int n_points,
                                     std::uint64_t seed) {
    Sampler s(seed);
    double worst = 0.0;
    for (int i = 0; i < n_points; ++i) {
        PhaseState st = sample_calogero_state(eq, rank, s);
        worst = std::max(worst, pushforward_error(eq, aux, g4sq, st));
    }
    std::string id = std::string("correspondence/") + to_string(eq) + "/rank" + std::to_string(rank);
    return make_report(id, worst, 1e-5, n_points,
                       {{"g4sq", fmt(rank > 1 ? g4sq : Complex(0.0))},
                        {"one_form_constant", fmt(one_form_constant(eq))},
                        {"seed", std::to_string(seed)}});
}

} // namespace pcc
