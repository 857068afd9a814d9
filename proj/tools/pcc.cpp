#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcc/io.hpp"
#include "pcc/verify.hpp"

using namespace pcc;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : ", ") + x;
    return s;
}

Equation equation_arg(const std::string& s) {
    auto eq = parse_equation(s);
    if (!eq)
        throw UsageError("unknown equation '" + s + "' (expected p1..p6)");
    return *eq;
}

std::string required_text(Equation eq) {
    const auto& req = required_aux(eq);
    return std::string(to_string(eq)) + " requires: " + (req.empty() ? "(nothing)" : join(req));
}

// --aux / --params: an existing file holds JSON, anything else is key=val
AuxParams load_params(const std::string& arg) {
    if (arg.empty())
        return {};
    if (std::filesystem::is_regular_file(arg))
        return parse_params_json(read_file(arg));
    return parse_params_inline(arg);
}

PainleveParams painleve_params(Equation eq, const AuxParams& aux) {
    if (auto miss = missing_aux(eq, aux); !miss.empty())
        throw UsageError("missing parameter(s) " + join(miss) + "; " + required_text(eq));
    switch (eq) {
    case Equation::II: return {eq, aux.get("alpha"), 0.0, 0.0, 0.0};
    case Equation::I: return {eq, 0.0, 0.0, 0.0, 0.0};
    default: return param_to_painleve(aux, eq);
    }
}

int cmd_integrate(const std::string& eq_s, const std::string& side_s, int rank, const std::string& params_path,
                  const std::string& initial_path, const std::string& t_end_s, double rel_tol, double abs_tol,
                  long max_steps, const std::string& out, std::string format) {
    Equation eq = equation_arg(eq_s);
    auto side = parse_side(side_s);
    if (!side)
        throw UsageError("unknown side '" + side_s + "' (expected painleve or calogero)");
    auto t_end = parse_complex(t_end_s);
    if (!t_end)
        throw UsageError("cannot parse --t-end '" + t_end_s + "'");
    if (format.empty()) {
        auto ext = std::filesystem::path(out).extension().string();
        format = ext == ".json" ? "json" : "csv";
    }

    AuxParams all = params_path.empty() ? AuxParams{} : parse_params_json(read_file(params_path));
    Complex g4sq = all.has("g4sq") ? all.get("g4sq") : Complex{0.0};
    AuxParams aux;
    for (const auto& [k, v] : all.values())
        if (k != "g4sq")
            aux.set(k, v);

    SystemDescriptor sys;
    bool raw = *side == Side::Calogero && !missing_aux(eq, aux).empty() &&
               (aux.has("alpha") || aux.has("beta") || aux.has("gamma") || aux.has("delta"));
    if (raw) {
        sys = make_calogero_system({eq, aux.has("alpha") ? aux.get("alpha") : 0.0, aux.has("beta") ? aux.get("beta") : 0.0,
                                    aux.has("gamma") ? aux.get("gamma") : 0.0, aux.has("delta") ? aux.get("delta") : 0.0},
                                   rank, g4sq);
    } else {
        if (auto miss = missing_aux(eq, aux); !miss.empty())
            throw UsageError("missing parameter(s) " + join(miss) + "; " + required_text(eq));
        sys = make_system(eq, *side, rank, aux, g4sq);
    }

    PhaseState init = parse_state_json(read_file(initial_path));
    if (int(init.coords.size()) != rank)
        throw UsageError("initial state has " + std::to_string(init.coords.size()) + " coordinates, --rank is " +
                         std::to_string(rank));

    IntegrateOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = abs_tol;
    opt.max_steps = max_steps;
    Trajectory tr = integrate(sys, init, *t_end, opt);
    write_output(out, format == "json" ? trajectory_to_json(tr) : trajectory_to_csv(tr));
    switch (tr.termination) {
    case Termination::Completed: return 0;
    case Termination::PoleDetected:
        std::cerr << "pole detected near t = " << fmt(tr.termination_time) << "\n";
        return 2;
    default:
        std::cerr << "integration stopped: " << to_string(tr.termination) << " at t = " << fmt(tr.termination_time)
                  << "\n";
        return 3;
    }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
    auto reports = run_suite(suite, seed);
    bool to_stdout = out.empty() || out == "-";
    std::ostream& log = to_stdout ? std::cerr : std::cout;
    int failed = 0;
    for (const auto& r : reports) {
        log << summary_line(r) << "\n";
        failed += !r.passed;
    }
    log << reports.size() - failed << "/" << reports.size() << " checks passed\n";
    write_output(out, reports_to_json(reports));
    return failed == 0 ? 0 : 2;
}

int cmd_params(const std::string& eq_s, const std::string& aux_arg, const std::string& out) {
    Equation eq = equation_arg(eq_s);
    write_output(out, painleve_params_json(painleve_params(eq, load_params(aux_arg))) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Painleve / Calogero correspondence toolkit"};
    app.require_subcommand(1);

    auto* integ = app.add_subcommand("integrate", "integrate a system along a straight complex time segment");
    std::string eq_s, side_s = "painleve", params_path, initial_path, t_end_s, out, format;
    int rank = 1;
    double rel_tol = 1e-10, abs_tol = 1e-12;
    long max_steps = 200000;
    integ->add_option("--equation", eq_s, "p1..p6")->required();
    integ->add_option("--side", side_s, "painleve or calogero")->check(CLI::IsMember({"painleve", "calogero"}));
    integ->add_option("--rank", rank, "number of particles")->check(CLI::PositiveNumber);
    integ->add_option("--params", params_path, "flat JSON parameter file")->check(CLI::ExistingFile);
    integ->add_option("--initial", initial_path, "JSON initial state")->required()->check(CLI::ExistingFile);
    integ->add_option("--t-end", t_end_s, "end time, e.g. 1+0.5i")->required();
    integ->add_option("--rel-tol", rel_tol)->check(CLI::PositiveNumber);
    integ->add_option("--abs-tol", abs_tol)->check(CLI::PositiveNumber);
    integ->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
    integ->add_option("--out", out, "output path (stdout if omitted)");
    integ->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* ver = app.add_subcommand("verify", "run verification suites and write a JSON report");
    std::string suite = "all", ver_out;
    std::uint64_t seed = 7;
    ver->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    ver->add_option("--seed", seed);
    ver->add_option("--out", ver_out, "report path (stdout if omitted)");

    auto* par = app.add_subcommand("params", "convert auxiliary parameters to (alpha, beta, gamma, delta)");
    std::string par_eq, aux_arg, par_out;
    par->add_option("--equation", par_eq, "p1..p6")->required();
    par->add_option("--aux", aux_arg, "JSON file or key=val list");
    par->add_option("--out", par_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (*integ)
            return cmd_integrate(eq_s, side_s, rank, params_path, initial_path, t_end_s, rel_tol, abs_tol, max_steps,
                                 out, format);
        if (*ver)
            return cmd_verify(suite, seed, ver_out);
        return cmd_params(par_eq, aux_arg, par_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidArgument ? 1 : 3;
    }
}
