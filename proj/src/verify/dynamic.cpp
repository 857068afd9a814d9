#include <cmath>

#include "pcc/transforms.hpp"
#include "pcc/verify.hpp"

namespace pcc {

PhaseState default_dynamic_initial(Equation eq) {
    switch (eq) {
    case Equation::VI: return {{Complex(0.27, 0.0) + 0.31 * Complex(0.05, 1.1)}, {{0.4, -0.2}}, {0.05, 1.1}};
    case Equation::V: return {{{1.1, 0.3}}, {{0.3, 0.2}}, {1.0, 0.2}};
    case Equation::IV: return {{{1.3, 0.2}}, {{0.2, -0.3}}, {0.2, 0.1}};
    case Equation::III: return {{{0.3, 0.4}}, {{0.25, 0.1}}, {1.0, -0.1}};
    case Equation::II: return {{{0.4, 0.3}}, {{-0.2, 0.3}}, {0.1, -0.2}};
    case Equation::I: return {{{0.3, -0.2}}, {{0.1, 0.4}}, {-0.2, 0.1}};
    }
    return {};
}

CheckReport run_dynamic_correspondence(Equation eq, int rank, const AuxParams& aux, Complex g4sq,
                                       const PhaseState& initial, Complex arc) {
    IntegrateOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-13;
    SystemDescriptor cal = make_system(eq, Side::Calogero, rank, aux, g4sq);
    SystemDescriptor pain = make_system(eq, Side::Painleve, rank, aux, g4sq);
    std::string id = std::string("dynamic/") + to_string(eq) + "/rank" + std::to_string(rank);

    Complex T1 = initial.time + arc;
    Trajectory ct = integrate(cal, initial, T1, opt);
    PhaseState start = multi_transform(eq, Direction::CalogeroToPainleve, initial, aux);
    Complex t1 = painleve_time(eq, T1);
    Trajectory pt = integrate(pain, start, t1, opt);
    if (ct.termination != Termination::Completed || pt.termination != Termination::Completed)
        return make_report(id, NAN, 1e-6, 0,
                           {{"calogero_termination", to_string(ct.termination)},
                            {"painleve_termination", to_string(pt.termination)}});

    PhaseState a = multi_transform(eq, Direction::CalogeroToPainleve, ct.samples.back(), aux);
    const PhaseState& b = pt.samples.back();
    double worst = 0.0;
    for (int j = 0; j < rank; ++j) {
        worst = std::max(worst, rel_err(a.coords[j], b.coords[j]));
        worst = std::max(worst, rel_err(a.momenta[j], b.momenta[j]));
    }
    return make_report(id, worst, 1e-6, 1,
                       {{"arc", fmt(arc)},
                        {"calogero_start", fmt(initial.time)},
                        {"painleve_start", fmt(start.time)},
                        {"painleve_end", fmt(t1)},
                        {"calogero_steps", std::to_string(ct.samples.size() - 1)},
                        {"painleve_steps", std::to_string(pt.samples.size() - 1)}});
}

CheckReport run_residual_check(Equation eq, const AuxParams& aux) {
    PhaseState c = default_dynamic_initial(eq);
    PhaseState start = multi_transform(eq, Direction::CalogeroToPainleve, c, aux);
    SystemDescriptor pain = make_system(eq, Side::Painleve, 1, aux);
    IntegrateOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-12;
    opt.max_step_fraction = 1.0 / 40.0;
    Complex arc = eq == Equation::VI ? Complex(0.3, 0.0) : Complex(0.5, 0.0);
    Trajectory tr = integrate(pain, start, start.time + arc, opt);
    std::string id = std::string("residual/") + to_string(eq);
    if (tr.termination != Termination::Completed)
        return make_report(id, NAN, 1e-4, long(tr.samples.size()), {{"termination", to_string(tr.termination)}});
    double r = painleve_residual(eq, tr);
    return make_report(id, r, 1e-4, long(tr.samples.size()), {{"t_start", fmt(start.time)}, {"t_end", fmt(tr.t_end)}});
}

} // namespace pcc
