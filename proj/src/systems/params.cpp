#include "pcc/systems.hpp"

namespace pcc {

const char* to_string(Equation eq) {
    static const char* names[] = {"", "p1", "p2", "p3", "p4", "p5", "p6"};
    return names[static_cast<int>(eq)];
}

const char* roman(Equation eq) {
    static const char* names[] = {"", "I", "II", "III", "IV", "V", "VI"};
    return names[static_cast<int>(eq)];
}

const char* to_string(Side side) { return side == Side::Painleve ? "painleve" : "calogero"; }

std::optional<Equation> parse_equation(const std::string& s) {
    for (int k = 1; k <= 6; ++k) {
        auto eq = static_cast<Equation>(k);
        if (s == to_string(eq) || s == roman(eq))
            return eq;
    }
    return std::nullopt;
}

std::optional<Side> parse_side(const std::string& s) {
    if (s == "painleve")
        return Side::Painleve;
    if (s == "calogero")
        return Side::Calogero;
    return std::nullopt;
}

Complex AuxParams::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw Error(ErrorKind::InvalidArgument, "missing parameter " + key);
    return it->second;
}

const std::vector<std::string>& required_aux(Equation eq) {
    static const std::vector<std::string> p6{"kappa0", "kappa1", "theta", "kappa"};
    static const std::vector<std::string> p5{"kappa0", "theta1", "eta1", "kappa"};
    static const std::vector<std::string> p4{"kappa0", "theta_inf"};
    static const std::vector<std::string> p3{"eta_inf", "theta_inf", "eta0", "theta0"};
    static const std::vector<std::string> p2{"alpha"};
    static const std::vector<std::string> p1{};
    switch (eq) {
    case Equation::VI: return p6;
    case Equation::V: return p5;
    case Equation::IV: return p4;
    case Equation::III: return p3;
    case Equation::II: return p2;
    case Equation::I: return p1;
    }
    return p1;
}

std::vector<std::string> missing_aux(Equation eq, const AuxParams& aux) {
    std::vector<std::string> out;
    for (const auto& k : required_aux(eq))
        if (!aux.has(k))
            out.push_back(k);
    return out;
}

PainleveParams param_to_painleve(const AuxParams& aux, Equation eq) {
    PainleveParams p;
    p.equation = eq;
    switch (eq) {
    case Equation::VI: {
        Complex k0 = aux.get("kappa0"), k1 = aux.get("kappa1"), th = aux.get("theta"), k = aux.get("kappa");
        Complex s = k0 + k1 + th - 1.0;
        p.alpha = s * s / 2.0 - 2.0 * k;
        p.beta = -k0 * k0 / 2.0;
        p.gamma = k1 * k1 / 2.0;
        p.delta = (1.0 - th * th) / 2.0;
        return p;
    }
    case Equation::V: {
        Complex k0 = aux.get("kappa0"), th1 = aux.get("theta1"), eta1 = aux.get("eta1"), k = aux.get("kappa");
        Complex s = k0 + th1;
        p.alpha = s * s / 2.0 - 2.0 * k;
        p.beta = -k0 * k0 / 2.0;
        p.gamma = eta1 * (th1 + 1.0);
        p.delta = -eta1 * eta1 / 2.0;
        return p;
    }
    case Equation::IV: {
        Complex k0 = aux.get("kappa0"), thi = aux.get("theta_inf");
        p.alpha = 2.0 * thi - k0 + 1.0;
        p.beta = -2.0 * k0 * k0;
        return p;
    }
    case Equation::III: {
        Complex ei = aux.get("eta_inf"), thi = aux.get("theta_inf"), e0 = aux.get("eta0"), th0 = aux.get("theta0");
        p.alpha = -4.0 * ei * thi;
        p.beta = 4.0 * e0 * (th0 + 1.0);
        p.gamma = 4.0 * ei * ei;
        p.delta = -4.0 * e0 * e0;
        return p;
    }
    case Equation::II:
    case Equation::I:
        break;
    }
    throw Error(ErrorKind::UnsupportedEquation, std::string("no parameter relation for P") + roman(eq));
}

TimeGauge SystemDescriptor::gauge() const {
    if (side == Side::Painleve)
        return TimeGauge::T;
    switch (equation) {
    case Equation::VI: return TimeGauge::Tau;
    case Equation::V:
    case Equation::III: return TimeGauge::LogT;
    default: return TimeGauge::T;
    }
}

SystemDescriptor make_system(Equation eq, Side side, int rank, const AuxParams& aux, Complex g4sq) {
    if (rank < 1)
        throw Error(ErrorKind::InvalidArgument, "rank must be positive");
    auto missing = missing_aux(eq, aux);
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing)
            list += (list.empty() ? "" : ", ") + m;
        throw Error(ErrorKind::InvalidArgument, std::string("P") + roman(eq) + " needs " + list);
    }
    SystemDescriptor sys;
    sys.equation = eq;
    sys.side = side;
    sys.rank = rank;
    sys.g4sq = g4sq;
    sys.aux = aux;
    if (eq == Equation::II) {
        sys.params.equation = eq;
        sys.params.alpha = aux.get("alpha");
    } else if (eq == Equation::I) {
        sys.params.equation = eq;
    } else {
        sys.params = param_to_painleve(aux, eq);
    }
    return sys;
}

SystemDescriptor make_calogero_system(const PainleveParams& params, int rank, Complex g4sq) {
    if (rank < 1)
        throw Error(ErrorKind::InvalidArgument, "rank must be positive");
    SystemDescriptor sys;
    sys.equation = params.equation;
    sys.side = Side::Calogero;
    sys.rank = rank;
    sys.g4sq = g4sq;
    sys.params = params;
    return sys;
}

} // namespace pcc
