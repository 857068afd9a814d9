#include <algorithm>
#include <cmath>
#include <set>

#include "pcc/dynamics.hpp"
#include "pcc/verify.hpp"

namespace pcc {

const char* to_string(Model m) {
    switch (m) {
    case Model::PVI: return "PVI";
    case Model::PV: return "PV";
    case Model::Elliptic: return "elliptic";
    case Model::Hyperbolic: return "hyperbolic";
    case Model::Rational: return "rational";
    case Model::ExpHyperbolic: return "exp-hyperbolic";
    case Model::SecondRational: return "second-rational";
    case Model::FirstRational: return "first-rational";
    }
    return "?";
}

const std::vector<std::string>& model_symbols(Model m) {
    static const std::vector<std::string> painleve{"t", "lambda", "alpha", "beta", "gamma", "delta"};
    static const std::vector<std::string> elliptic{"tau", "q", "p", "g0sq", "g1sq", "g2sq", "g3sq", "g4sq"};
    static const std::vector<std::string> four{"t", "q", "p", "alpha", "beta", "gamma", "delta", "g4sq"};
    static const std::vector<std::string> two{"t", "q", "p", "alpha", "beta", "g4sq"};
    static const std::vector<std::string> one{"t", "q", "p", "alpha", "g4sq"};
    static const std::vector<std::string> none{"t", "q", "p", "g4sq"};
    switch (m) {
    case Model::PVI:
    case Model::PV: return painleve;
    case Model::Elliptic: return elliptic;
    case Model::Hyperbolic:
    case Model::ExpHyperbolic: return four;
    case Model::Rational: return two;
    case Model::SecondRational: return one;
    case Model::FirstRational: return none;
    }
    return none;
}

std::vector<Limit> all_limits() {
    return {Limit::PVI_to_PV,
            Limit::Elliptic_to_Hyperbolic,
            Limit::Hyperbolic_to_Rational,
            Limit::Hyperbolic_to_ExpHyperbolic,
            Limit::Rational_to_SecondRational,
            Limit::ExpHyperbolic_to_SecondRational,
            Limit::SecondRational_to_FirstRational};
}

double expected_order(Limit limit) {
    switch (limit) {
    case Limit::Rational_to_SecondRational: return 2.0;
    case Limit::SecondRational_to_FirstRational: return 6.0;
    default: return 1.0;
    }
}

namespace {

const char* limit_id(Limit l) {
    switch (l) {
    case Limit::PVI_to_PV: return "PVI-PV";
    case Limit::Elliptic_to_Hyperbolic: return "elliptic-hyperbolic";
    case Limit::Hyperbolic_to_Rational: return "hyperbolic-rational";
    case Limit::Hyperbolic_to_ExpHyperbolic: return "hyperbolic-exphyperbolic";
    case Limit::Rational_to_SecondRational: return "rational-secondrational";
    case Limit::ExpHyperbolic_to_SecondRational: return "exphyperbolic-secondrational";
    case Limit::SecondRational_to_FirstRational: return "secondrational-firstrational";
    }
    return "?";
}

// tilded parameters shared by every limit
const Complex ta{0.3, 0.1}, tb{0.4, -0.2}, tg{0.5, 0.2}, td{-0.6, 0.1};
const Complex tg4sq{0.7, 0.0};

// Affine change of variables q = a + b q~, t = c + d t~ between two Calogero
// models, with the source parameters written in terms of the tilded ones.
struct ChainMap {
    PainleveParams source;
    Complex g4sq;
    Complex a, b, c, d;
    PainleveParams target;
};

ChainMap chain_map(Limit limit, double e) {
    ChainMap m{};
    m.g4sq = tg4sq;
    switch (limit) {
    case Limit::Hyperbolic_to_Rational:
        m.source = {Equation::V, 1.0 / (8 * std::pow(e, 4)), tb / 4.0, -1.0 / (4 * std::pow(e, 4)),
                    -1.0 / (8 * std::pow(e, 4)) + ta / (2 * e * e)};
        m.g4sq = tg4sq / 16.0;
        m.a = kPi * kI, m.b = std::sqrt(e), m.c = 1.0, m.d = 2 * e;
        m.target = {Equation::IV, ta, tb, 0.0, 0.0};
        break;
    case Limit::Hyperbolic_to_ExpHyperbolic:
        m.source = {Equation::V, ta / (4 * e) + tg / (8 * e * e), -tg / (8 * e * e), tb * e / 4.0, td * e * e / 8.0};
        m.a = -std::log(e / 4), m.b = -1.0, m.c = 0.0, m.d = 1.0;
        m.target = {Equation::III, ta, tb, tg, td};
        break;
    case Limit::Rational_to_SecondRational:
        m.source = {Equation::IV, -2.0 * ta - 1.0 / (2 * std::pow(e, 6)), -1.0 / (2 * std::pow(e, 12)), 0.0, 0.0};
        m.g4sq = 16.0 * tg4sq;
        m.a = 2 * std::pow(e, -1.5), m.b = std::pow(2.0, 2.0 / 3.0) * std::sqrt(e);
        m.c = -1 / std::pow(e, 3), m.d = std::pow(4.0, -1.0 / 3.0) * e;
        m.target = {Equation::II, ta, 0.0, 0.0, 0.0};
        break;
    case Limit::ExpHyperbolic_to_SecondRational:
        m.source = {Equation::III, -1.0 / (2 * std::pow(e, 6)), (1.0 + 4.0 * std::pow(e, 3) * ta) / (2 * std::pow(e, 6)),
                    1.0 / (4 * std::pow(e, 6)), -1.0 / (4 * std::pow(e, 6))};
        m.a = 0.0, m.b = 2 * e, m.c = 1.0, m.d = 2 * e * e;
        m.target = {Equation::II, ta, 0.0, 0.0, 0.0};
        break;
    case Limit::SecondRational_to_FirstRational:
        m.source = {Equation::II, 4.0 / std::pow(e, 15), 0.0, 0.0, 0.0};
        m.a = 1 / std::pow(e, 5), m.b = e, m.c = -6 / std::pow(e, 10), m.d = e * e;
        m.target = {Equation::I, 0.0, 0.0, 0.0, 0.0};
        break;
    default:
        throw Error(ErrorKind::InvalidArgument, "not a Calogero chain limit");
    }
    return m;
}

bool log_gauge(Equation eq) { return eq == Equation::V || eq == Equation::III; }

struct ChainPoint {
    Complex q[2], w[2], t;
};

// fixed tilded sample points (coordinates, velocities d q~/d t~, time)
std::vector<ChainPoint> chain_points(Equation target) {
    std::vector<ChainPoint> pts = {
        {{{0.7, 0.2}, {-0.4, 0.5}}, {{0.3, -0.1}, {0.2, 0.4}}, {0.6, 0.3}},
        {{{1.1, -0.3}, {0.35, 0.25}}, {{-0.5, 0.2}, {0.1, -0.3}}, {0.9, -0.2}},
        {{{0.5, 0.6}, {-0.9, -0.2}}, {{0.4, 0.4}, {-0.2, 0.1}}, {1.2, 0.1}},
        {{{-0.6, 0.1}, {0.8, -0.45}}, {{0.1, 0.3}, {0.3, -0.2}}, {0.7, -0.4}},
    };
    (void)target;
    return pts;
}

double chain_defect(Limit limit, double e) {
    ChainMap m = chain_map(limit, e);
    SystemDescriptor src = make_calogero_system(m.source, 2, m.g4sq);
    SystemDescriptor tgt = make_calogero_system(m.target, 2, tg4sq);
    double worst = 0.0;
    for (const auto& pt : chain_points(m.target.equation)) {
        Complex t = m.c + m.d * pt.t;
        PhaseState s{{m.a + m.b * pt.q[0], m.a + m.b * pt.q[1]}, {0.0, 0.0}, t};
        PhaseState st{{pt.q[0], pt.q[1]}, {0.0, 0.0}, pt.t};
        Gradients gs = hamiltonian_gradients(src, s);
        Gradients gt = hamiltonian_gradients(tgt, st);
        for (int j = 0; j < 2; ++j) {
            Complex qt = m.b * pt.w[j] / m.d;
            Complex qtt = log_gauge(m.source.equation) ? (-gs.d_coords[j] - t * qt) / (t * t) : -gs.d_coords[j];
            Complex accel = m.d * m.d * qtt / m.b;
            Complex lhs = log_gauge(m.target.equation) ? pt.t * pt.t * accel + pt.t * pt.w[j] : accel;
            worst = std::max(worst, std::abs(lhs + gt.d_coords[j]));
        }
    }
    return worst;
}

double pvi_pv_defect(double e) {
    PainleveParams pv{Equation::V, ta, tb, tg, td};
    PainleveParams p6{Equation::VI, ta, tb, tg / e - td / (e * e), td / (e * e)};
    struct P {
        Complex l, dl, t;
    };
    const P pts[] = {{{0.4, 0.3}, {0.2, -0.5}, {0.7, 0.2}},
                     {{-0.3, 0.6}, {0.4, 0.1}, {1.1, -0.3}},
                     {{1.4, -0.2}, {-0.3, 0.3}, {0.5, 0.5}},
                     {{0.2, -0.7}, {0.1, 0.2}, {0.9, 0.1}}};
    double worst = 0.0;
    for (const auto& p : pts) {
        Complex src = e * e * painleve_rhs(p6, p.l, p.dl / e, 1.0 + e * p.t);
        worst = std::max(worst, std::abs(src - painleve_rhs(pv, p.l, p.dl, p.t)));
    }
    return worst;
}

// elliptic couplings g_n^2 from tilded hyperbolic ones
const Complex tg0{0.3, 0.1}, tg1{0.2, -0.1}, tg2{0.5, 0.2}, tg3{0.4, -0.3};
const Complex ttilde{1.3, 0.4};

Complex tau_for(double e) { return std::log(e * ttilde / 16.0) / (kPi * kI); }

// two-particle potential difference elliptic(scheduled) - trigonometric at
// fixed coordinates, u-mean removed; returns max deviation
double elliptic_potential_residual(double e) {
    EllipticContext ctx(tau_for(e));
    Complex g[4] = {tg0, tg1, tg2 / e + tg3 / (e * e), tg3 / (e * e)};
    const double pi2 = kPi * kPi;
    auto trig = [&](Complex q) {
        Complex s = std::sin(kPi * q), c = std::cos(kPi * q);
        return tg0 * pi2 / (s * s) + tg1 * pi2 / (c * c) + tg2 * pi2 * ttilde / 2.0 * std::cos(2.0 * kPi * q) -
               tg3 * pi2 * ttilde * ttilde / 8.0 * std::cos(4.0 * kPi * q);
    };
    auto trig_pair = [&](Complex x) {
        Complex s = std::sin(kPi * x);
        return pi2 / (s * s);
    };
    const Complex pts[][2] = {{{0.15, 0.05}, {0.32, -0.04}},
                              {{0.21, -0.08}, {0.41, 0.06}},
                              {{0.27, 0.1}, {0.12, 0.02}},
                              {{0.36, -0.03}, {0.19, -0.09}},
                              {{0.44, 0.07}, {0.25, 0.03}},
                              {{0.08, -0.06}, {0.38, 0.09}}};
    CVec diffs;
    for (const auto& pq : pts) {
        Complex ell = 0.0, hyp = 0.0;
        for (Complex q : pq) {
            for (int n = 0; n < 4; ++n)
                ell += g[n] * shifted_p(q, n, ctx);
            hyp += trig(q);
        }
        // ordered pairs: each unordered pair twice
        ell += 2.0 * tg4sq * (weierstrass_p(pq[0] - pq[1], ctx) + weierstrass_p(pq[0] + pq[1], ctx));
        hyp += 2.0 * tg4sq * (trig_pair(pq[0] - pq[1]) + trig_pair(pq[0] + pq[1]));
        diffs.push_back(ell - hyp);
    }
    Complex mean = 0.0;
    for (Complex d : diffs)
        mean += d;
    mean /= double(diffs.size());
    double worst = 0.0;
    for (Complex d : diffs)
        worst = std::max(worst, std::abs(d - mean));
    return worst;
}

double elliptic_time_defect(double e) {
    EllipticContext ctx(tau_for(e));
    return std::abs(ctx.t() - 1.0 - e * ttilde);
}

std::vector<Substitution> substitutions_for(Limit limit) {
    switch (limit) {
    case Limit::PVI_to_PV:
        return {{"t", "1 + eps*t~"}, {"gamma", "gamma~/eps - delta~/eps^2"}, {"delta", "delta~/eps^2"}};
    case Limit::Elliptic_to_Hyperbolic:
        return {{"tau", "16 exp(pi i tau) = eps*t~"},
                {"g2sq", "g2~^2/eps + g3~^2/eps^2"},
                {"g3sq", "g3~^2/eps^2"},
                {"g0sq", "g0~^2"},
                {"g1sq", "g1~^2"}};
    case Limit::Hyperbolic_to_Rational:
        return {{"t", "1 + 2 eps t~"},
                {"q", "pi i + eps^(1/2) q~"},
                {"alpha", "1/(8 eps^4)"},
                {"beta", "beta~/4"},
                {"gamma", "-1/(4 eps^4)"},
                {"delta", "-1/(8 eps^4) + alpha~/(2 eps^2)"},
                {"g4sq", "g4~^2/16"}};
    case Limit::Hyperbolic_to_ExpHyperbolic:
        return {{"q", "-q~ - log(eps/4)"},
                {"alpha", "alpha~/(4 eps) + gamma~/(8 eps^2)"},
                {"beta", "-gamma~/(8 eps^2)"},
                {"gamma", "beta~ eps/4"},
                {"delta", "delta~ eps^2/8"}};
    case Limit::Rational_to_SecondRational:
        return {{"t", "(-1 + 4^(-1/3) eps^4 t~)/eps^3"},
                {"q", "2 (1 + 2^(-1/3) eps^2 q~)/eps^(3/2)"},
                {"alpha", "-2 alpha~ - 1/(2 eps^6)"},
                {"beta", "-1/(2 eps^12)"},
                {"g4sq", "16 g4~^2"}};
    case Limit::ExpHyperbolic_to_SecondRational:
        return {{"t", "1 + 2 eps^2 t~"},
                {"q", "2 eps q~"},
                {"alpha", "-1/(2 eps^6)"},
                {"beta", "(1 + 4 eps^3 alpha~)/(2 eps^6)"},
                {"gamma", "1/(4 eps^6)"},
                {"delta", "-1/(4 eps^6)"}};
    case Limit::SecondRational_to_FirstRational:
        return {{"t", "(-6 + eps^12 t~)/eps^10"}, {"q", "(1 + eps^6 q~)/eps^5"}, {"alpha", "4/eps^15"}};
    }
    return {};
}

} // namespace

DegenerationSchedule make_schedule(Limit limit, double epsilon) {
    static const std::map<Limit, std::pair<Model, Model>> models = {
        {Limit::PVI_to_PV, {Model::PVI, Model::PV}},
        {Limit::Elliptic_to_Hyperbolic, {Model::Elliptic, Model::Hyperbolic}},
        {Limit::Hyperbolic_to_Rational, {Model::Hyperbolic, Model::Rational}},
        {Limit::Hyperbolic_to_ExpHyperbolic, {Model::Hyperbolic, Model::ExpHyperbolic}},
        {Limit::Rational_to_SecondRational, {Model::Rational, Model::SecondRational}},
        {Limit::ExpHyperbolic_to_SecondRational, {Model::ExpHyperbolic, Model::SecondRational}},
        {Limit::SecondRational_to_FirstRational, {Model::SecondRational, Model::FirstRational}},
    };
    if (!(epsilon > 0))
        throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    auto [src, tgt] = models.at(limit);
    return {limit, src, tgt, epsilon, substitutions_for(limit)};
}

double degeneration_defect(Limit limit, double epsilon) {
    switch (limit) {
    case Limit::PVI_to_PV: return pvi_pv_defect(epsilon);
    case Limit::Elliptic_to_Hyperbolic: return elliptic_potential_residual(epsilon);
    default: return chain_defect(limit, epsilon);
    }
}

namespace {

CheckReport order_report(const std::string& id, const std::vector<double>& eps, const std::vector<double>& defects,
                         double order) {
    // |log(observed ratio) - order * log(eps ratio)| <= log 3
    double worst = 0.0;
    std::map<std::string, std::string> meta{{"expected_order", fmt(order)}};
    for (std::size_t i = 0; i < eps.size(); ++i)
        meta["defect@" + fmt(eps[i])] = fmt(defects[i]);
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        double ratio = defects[i] / defects[i + 1];
        double expect = std::pow(eps[i] / eps[i + 1], order);
        meta["ratio@" + fmt(eps[i]) + "/" + fmt(eps[i + 1])] = fmt(ratio);
        double dev = std::abs(std::log(ratio / expect));
        if (!std::isfinite(dev))
            dev = INFINITY;
        worst = std::max(worst, dev);
    }
    return make_report(id, worst, std::log(3.0), long(eps.size()), meta);
}

} // namespace

std::vector<CheckReport> run_degeneration_suite(const DegenerationSchedule& schedule,
                                                const std::vector<double>& eps_list) {
    const auto& allowed = model_symbols(schedule.source);
    for (const auto& sub : schedule.substitutions)
        if (std::find(allowed.begin(), allowed.end(), sub.symbol) == allowed.end())
            throw Error(ErrorKind::ScheduleMismatch, "symbol '" + sub.symbol + "' does not occur in the " +
                                                         to_string(schedule.source) + " model");
    if (eps_list.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "need at least two epsilons");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]) || !(eps_list[i + 1] > 0))
            throw Error(ErrorKind::InvalidArgument, "epsilons must be positive and decreasing");

    std::string base = std::string("degeneration/") + limit_id(schedule.limit);
    std::vector<double> defects;
    for (double e : eps_list)
        defects.push_back(degeneration_defect(schedule.limit, e));
    std::vector<CheckReport> out;
    out.push_back(order_report(base + "/order", eps_list, defects, expected_order(schedule.limit)));

    if (schedule.limit == Limit::Elliptic_to_Hyperbolic) {
        double e = eps_list.back();
        out.push_back(make_report(base + "/potential", defects.back(), 1e-3, 6,
                                  {{"epsilon", fmt(e)}, {"tau", fmt(tau_for(e))}}));
        std::vector<double> tdef;
        for (double x : eps_list)
            tdef.push_back(elliptic_time_defect(x));
        out.push_back(order_report(base + "/time-map", eps_list, tdef, 2.0));
    }
    return out;
}

} // namespace pcc
