#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcc/dynamics.hpp"
#include "pcc/elliptic.hpp"
#include "pcc/random.hpp"
#include "pcc/systems.hpp"

namespace pcc {

struct CheckReport {
    std::string check_id;
    double max_error = 0.0;
    double tolerance = 0.0;
    long samples = 0;
    bool passed = false;
    std::map<std::string, std::string> metadata;
};

// passed is derived: max_error <= tolerance (NaN fails)
CheckReport make_report(std::string id, double max_error, double tolerance, long samples,
                        std::map<std::string, std::string> metadata = {});

std::string reports_to_json(const std::vector<CheckReport>& reports);
std::vector<CheckReport> reports_from_json(const std::string& text);
// "PASS check_id max_error=... tol=... n=..."
std::string summary_line(const CheckReport& r);
// stable 17-digit text for metadata values
std::string fmt(double x);
std::string fmt(Complex z);

// ---- identities ----

std::vector<CheckReport> run_identity_suite(const std::vector<EllipticContext>& contexts, std::uint64_t seed);
// e_k, t and trigonometric-limit checks at large Im tau
std::vector<CheckReport> run_asymptotic_checks();

// ---- Hamiltonian checks ----

// generic aux parameters used by the suites
AuxParams default_aux(Equation eq);
Complex default_g4sq();

// random Calogero-side state in the documented sampling domain
PhaseState sample_calogero_state(Equation eq, int rank, Sampler& s);
PhaseState sample_painleve_state(Equation eq, int rank, Sampler& s);

CheckReport run_gradient_suite(Equation eq, Side side, int rank, const AuxParams& aux, Complex g4sq, int n_points,
                               std::uint64_t seed);

// max componentwise relative error between the pushed-forward Calogero field
// and the Painleve field at one point
double pushforward_error(Equation eq, const AuxParams& aux, Complex g4sq, const PhaseState& calogero_state,
                         const EllipticContext* ctx = nullptr, double h = 1e-6);

CheckReport run_correspondence_suite(Equation eq, int rank, const AuxParams& aux, Complex g4sq, int n_points,
                                     std::uint64_t seed);

// Calogero flow then map, versus map then Painleve flow, over calogero time
// initial.time -> initial.time + arc
CheckReport run_dynamic_correspondence(Equation eq, int rank, const AuxParams& aux, Complex g4sq,
                                       const PhaseState& initial, Complex arc);
PhaseState default_dynamic_initial(Equation eq);

// Painleve-side trajectory that is integrated and fed to painleve_residual
CheckReport run_residual_check(Equation eq, const AuxParams& aux);

// ---- degenerations ----

enum class Model {
    PVI, PV, Elliptic, Hyperbolic, Rational, ExpHyperbolic, SecondRational, FirstRational,
};
const char* to_string(Model m);

struct Substitution {
    std::string symbol;
    std::string formula;
};

enum class Limit {
    PVI_to_PV,           // Painleve ODEs
    Elliptic_to_Hyperbolic,
    Hyperbolic_to_Rational,
    Hyperbolic_to_ExpHyperbolic,
    Rational_to_SecondRational,
    ExpHyperbolic_to_SecondRational,
    SecondRational_to_FirstRational,
};

struct DegenerationSchedule {
    Limit limit;
    Model source;
    Model target;
    double epsilon = 0.0;
    std::vector<Substitution> substitutions;
};

DegenerationSchedule make_schedule(Limit limit, double epsilon);
// symbols a schedule may substitute for the given source model
const std::vector<std::string>& model_symbols(Model m);
// expected exponent p in defect ~ eps^p
double expected_order(Limit limit);
std::vector<Limit> all_limits();

// One defect report per epsilon plus a shrinkage report over consecutive pairs.
// Throws ScheduleMismatch if a substitution names a symbol the source lacks.
std::vector<CheckReport> run_degeneration_suite(const DegenerationSchedule& schedule,
                                                const std::vector<double>& eps_list);
// defect at a single epsilon (max over the fixed tilded sample points)
double degeneration_defect(Limit limit, double epsilon);

// ---- suites ----

const std::vector<std::string>& suite_names();
// sorted by check_id; throws InvalidArgument on unknown name
std::vector<CheckReport> run_suite(const std::string& name, std::uint64_t seed);

} // namespace pcc
