#include <algorithm>

#include "pcc/verify.hpp"

namespace pcc {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identities", "correspondence", "dynamic", "degeneration", "all"};
    return names;
}

namespace {

std::vector<double> default_epsilons(Limit limit) {
    switch (limit) {
    case Limit::Elliptic_to_Hyperbolic: return {1e-3, 1e-4};
    case Limit::Rational_to_SecondRational: return {0.2, 0.05};
    case Limit::ExpHyperbolic_to_SecondRational: return {0.1, 0.02};
    case Limit::SecondRational_to_FirstRational: return {0.3, 0.2};
    default: return {1e-2, 1e-3};
    }
}

void identities(std::uint64_t seed, std::vector<CheckReport>& out) {
    std::vector<EllipticContext> ctxs{EllipticContext(Complex{0, 1}), EllipticContext(Complex{0, 1.5}),
                                      EllipticContext(Complex{0.4, 2})};
    for (auto& r : run_identity_suite(ctxs, seed))
        out.push_back(std::move(r));
    for (auto& r : run_asymptotic_checks())
        out.push_back(std::move(r));
}

void correspondence(std::uint64_t seed, std::vector<CheckReport>& out) {
    for (int k = 1; k <= 6; ++k) {
        auto eq = static_cast<Equation>(k);
        for (int rank : {1, 3}) {
            std::uint64_t s = seed * 131u + std::uint64_t(k * 10 + rank);
            out.push_back(run_correspondence_suite(eq, rank, default_aux(eq), default_g4sq(), rank == 1 ? 100 : 50, s));
            for (Side side : {Side::Painleve, Side::Calogero})
                out.push_back(run_gradient_suite(eq, side, rank, default_aux(eq), default_g4sq(), 30, s + 7));
        }
    }
}

void dynamic(std::vector<CheckReport>& out) {
    for (int k = 1; k <= 6; ++k) {
        auto eq = static_cast<Equation>(k);
        out.push_back(
            run_dynamic_correspondence(eq, 1, default_aux(eq), default_g4sq(), default_dynamic_initial(eq), 0.3));
        out.push_back(run_residual_check(eq, default_aux(eq)));
    }
}

void degeneration(std::vector<CheckReport>& out) {
    for (Limit l : all_limits()) {
        auto eps = default_epsilons(l);
        for (auto& r : run_degeneration_suite(make_schedule(l, eps.front()), eps))
            out.push_back(std::move(r));
    }
}

} // namespace

std::vector<CheckReport> run_suite(const std::string& name, std::uint64_t seed) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
    std::vector<CheckReport> out;
    bool all = name == "all";
    if (all || name == "identities")
        identities(seed, out);
    if (all || name == "correspondence")
        correspondence(seed, out);
    if (all || name == "dynamic")
        dynamic(out);
    if (all || name == "degeneration")
        degeneration(out);
    std::stable_sort(out.begin(), out.end(),
                     [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
    return out;
}

} // namespace pcc
