#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "pcc/io.hpp"
#include "pcc/verify.hpp"

namespace pcc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

bool parse_real(const std::string& s, double& out) {
    if (s.empty())
        return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno == 0;
}

Complex complex_of(const json& v, const std::string& what) {
    if (v.is_number())
        return {v.get<double>(), 0.0};
    if (v.is_null())
        return {NAN, 0.0};
    if (v.is_array() && v.size() == 2) {
        auto part = [&](const json& x) { return x.is_null() ? NAN : x.get<double>(); };
        if ((v[0].is_number() || v[0].is_null()) && (v[1].is_number() || v[1].is_null()))
            return {part(v[0]), part(v[1])};
    }
    if (v.is_string())
        if (auto c = parse_complex(v.get<std::string>()))
            return *c;
    bad("expected a complex number for " + what);
}

ordered_json number(double x) {
    if (!std::isfinite(x))
        return nullptr;
    return x;
}

ordered_json complex_json(Complex z) { return ordered_json::array({number(z.real()), number(z.imag())}); }

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        bad("malformed " + what + ": " + e.what());
    }
}

} // namespace

std::optional<Complex> parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        return std::nullopt;
    if (s.front() == '[') {
        try {
            json v = json::parse(s);
            if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
                return Complex{v[0].get<double>(), v[1].get<double>()};
        } catch (const json::exception&) {
        }
        return std::nullopt;
    }
    double re = 0.0, im = 0.0;
    if (s.back() != 'i' && s.back() != 'j')
        return parse_real(s, re) ? std::optional<Complex>(Complex{re, 0.0}) : std::nullopt;
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    std::string re_s = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_s = split == std::string::npos ? s : s.substr(split);
    if (im_s.empty() || im_s == "+")
        im_s = "1";
    else if (im_s == "-")
        im_s = "-1";
    if (!re_s.empty() && !parse_real(re_s, re))
        return std::nullopt;
    if (!parse_real(im_s, im))
        return std::nullopt;
    return Complex{re, im};
}

AuxParams parse_params_json(const std::string& text) {
    json v = parse_json(text, "parameter file");
    if (!v.is_object())
        bad("parameter file must be a flat JSON object");
    AuxParams aux;
    for (auto it = v.begin(); it != v.end(); ++it)
        aux.set(it.key(), complex_of(it.value(), it.key()));
    return aux;
}

AuxParams parse_params_inline(const std::string& text) {
    AuxParams aux;
    std::string norm = text;
    for (char& c : norm)
        if (c == ',' || c == ';')
            c = ' ';
    std::istringstream in(norm);
    std::string item;
    while (in >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            bad("expected key=value, got '" + item + "'");
        auto val = parse_complex(item.substr(eq + 1));
        if (!val)
            bad("bad value in '" + item + "'");
        aux.set(item.substr(0, eq), *val);
    }
    return aux;
}

PhaseState parse_state_json(const std::string& text) {
    json v = parse_json(text, "initial state");
    if (!v.is_object() || !v.contains("coords") || !v.contains("momenta"))
        bad("initial state needs \"coords\" and \"momenta\"");
    PhaseState s;
    s.time = v.contains("time") ? complex_of(v["time"], "time") : Complex{0.0};
    auto list = [&](const json& a, const char* what) {
        CVec out;
        if (a.is_array()) {
            for (const auto& x : a)
                out.push_back(complex_of(x, what));
        } else {
            out.push_back(complex_of(a, what));
        }
        return out;
    };
    s.coords = list(v["coords"], "coords");
    s.momenta = list(v["momenta"], "momenta");
    if (s.coords.empty() || s.coords.size() != s.momenta.size())
        bad("coords and momenta must be non-empty and of equal length");
    return s;
}

std::string painleve_params_json(const PainleveParams& p) {
    auto c = [](Complex z) { return "[" + fmt(z.real() + 0.0) + "," + fmt(z.imag() + 0.0) + "]"; };
    return "{\"alpha\":" + c(p.alpha) + ",\"beta\":" + c(p.beta) + ",\"gamma\":" + c(p.gamma) + ",\"delta\":" +
           c(p.delta) + "}";
}

std::vector<std::string> trajectory_columns(Side side, int rank) {
    std::vector<std::string> cols{"re_t", "im_t"};
    const char* x = side == Side::Painleve ? "l" : "q";
    const char* y = side == Side::Painleve ? "m" : "p";
    for (const char* name : {x, y})
        for (int j = 1; j <= rank; ++j) {
            cols.push_back(std::string("re_") + name + std::to_string(j));
            cols.push_back(std::string("im_") + name + std::to_string(j));
        }
    return cols;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out;
    auto cols = trajectory_columns(traj.system.side, traj.system.rank);
    for (std::size_t k = 0; k < cols.size(); ++k)
        out += (k ? "," : "") + cols[k];
    out += '\n';
    for (const auto& s : traj.samples) {
        out += fmt(s.time.real()) + "," + fmt(s.time.imag());
        for (const CVec* v : {&s.coords, &s.momenta})
            for (Complex z : *v)
                out += "," + fmt(z.real()) + "," + fmt(z.imag());
        out += '\n';
    }
    return out;
}

std::string trajectory_to_json(const Trajectory& traj) {
    const auto& sys = traj.system;
    ordered_json o;
    o["equation"] = to_string(sys.equation);
    o["side"] = to_string(sys.side);
    o["rank"] = sys.rank;
    o["g4sq"] = complex_json(sys.g4sq);
    ordered_json aux = ordered_json::object();
    for (const auto& [k, v] : sys.aux.values())
        aux[k] = complex_json(v);
    o["params"] = aux;
    o["painleve_params"] = {{"alpha", complex_json(sys.params.alpha)},
                            {"beta", complex_json(sys.params.beta)},
                            {"gamma", complex_json(sys.params.gamma)},
                            {"delta", complex_json(sys.params.delta)}};
    o["t_start"] = complex_json(traj.t_start);
    o["t_end"] = complex_json(traj.t_end);
    o["rel_tol"] = traj.rel_tol;
    o["abs_tol"] = traj.abs_tol;
    ordered_json term{{"kind", to_string(traj.termination)}};
    if (traj.termination != Termination::Completed)
        term["time"] = complex_json(traj.termination_time);
    o["termination"] = term;
    o["columns"] = trajectory_columns(sys.side, sys.rank);
    ordered_json samples = ordered_json::array();
    for (const auto& s : traj.samples) {
        ordered_json c = ordered_json::array(), m = ordered_json::array();
        for (Complex z : s.coords)
            c.push_back(complex_json(z));
        for (Complex z : s.momenta)
            m.push_back(complex_json(z));
        samples.push_back({{"t", complex_json(s.time)}, {"coords", c}, {"momenta", m}});
    }
    o["samples"] = samples;
    return o.dump(2) + "\n";
}

TrajectoryTable read_trajectory_csv(const std::string& text) {
    TrajectoryTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        bad("empty trajectory file");
    {
        std::istringstream h(line);
        std::string cell;
        while (std::getline(h, cell, ','))
            table.columns.push_back(cell);
    }
    std::size_t n = table.columns.size();
    if (n < 6 || (n - 2) % 4 != 0 || table.columns[0] != "re_t" || table.columns[1] != "im_t")
        bad("unexpected trajectory header");
    std::size_t rank = (n - 2) / 4;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<double> vals;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            double x;
            if (!parse_real(cell, x))
                bad("bad number '" + cell + "'");
            vals.push_back(x);
        }
        if (vals.size() != n)
            bad("row has " + std::to_string(vals.size()) + " fields, expected " + std::to_string(n));
        PhaseState s;
        s.time = {vals[0], vals[1]};
        for (std::size_t j = 0; j < rank; ++j) {
            s.coords.push_back({vals[2 + 2 * j], vals[3 + 2 * j]});
            s.momenta.push_back({vals[2 + 2 * rank + 2 * j], vals[3 + 2 * rank + 2 * j]});
        }
        table.samples.push_back(std::move(s));
    }
    return table;
}

Trajectory read_trajectory_json(const std::string& text) {
    json o = parse_json(text, "trajectory");
    Trajectory tr;
    try {
        auto eq = parse_equation(o.at("equation").get<std::string>());
        auto side = parse_side(o.at("side").get<std::string>());
        if (!eq || !side)
            bad("unknown equation or side");
        auto& sys = tr.system;
        sys.equation = *eq;
        sys.side = *side;
        sys.rank = o.at("rank").get<int>();
        sys.g4sq = complex_of(o.at("g4sq"), "g4sq");
        for (auto it = o.at("params").begin(); it != o.at("params").end(); ++it)
            sys.aux.set(it.key(), complex_of(it.value(), it.key()));
        const auto& pp = o.at("painleve_params");
        sys.params = {*eq, complex_of(pp.at("alpha"), "alpha"), complex_of(pp.at("beta"), "beta"),
                      complex_of(pp.at("gamma"), "gamma"), complex_of(pp.at("delta"), "delta")};
        tr.t_start = complex_of(o.at("t_start"), "t_start");
        tr.t_end = complex_of(o.at("t_end"), "t_end");
        tr.rel_tol = o.at("rel_tol").get<double>();
        tr.abs_tol = o.at("abs_tol").get<double>();
        const std::string kind = o.at("termination").at("kind").get<std::string>();
        bool known = false;
        for (auto t : {Termination::Completed, Termination::PoleDetected, Termination::StepUnderflow,
                       Termination::MaxSteps})
            if (kind == to_string(t)) {
                tr.termination = t;
                known = true;
            }
        if (!known)
            bad("unknown termination '" + kind + "'");
        if (o["termination"].contains("time"))
            tr.termination_time = complex_of(o["termination"]["time"], "termination time");
        for (const auto& s : o.at("samples")) {
            PhaseState p;
            p.time = complex_of(s.at("t"), "t");
            for (const auto& z : s.at("coords"))
                p.coords.push_back(complex_of(z, "coords"));
            for (const auto& z : s.at("momenta"))
                p.momenta.push_back(complex_of(z, "momenta"));
            tr.samples.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        bad(std::string("malformed trajectory: ") + e.what());
    }
    return tr;
}

} // namespace pcc
