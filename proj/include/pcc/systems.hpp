#pragma once

#include <map>
#include <optional>
#include <string>

#include "pcc/common.hpp"
#include "pcc/elliptic.hpp"

namespace pcc {

enum class Equation { I = 1, II, III, IV, V, VI };
enum class Side { Painleve, Calogero };
// which derivative the canonical equations use: 2 pi i d/dtau, t d/dt, d/dt
enum class TimeGauge { Tau, LogT, T };

const char* to_string(Equation eq);   // "p1" .. "p6"
const char* roman(Equation eq);       // "I" .. "VI"
const char* to_string(Side side);
std::optional<Equation> parse_equation(const std::string& s);
std::optional<Side> parse_side(const std::string& s);

struct PainleveParams {
    Equation equation = Equation::I;
    Complex alpha = 0.0;
    Complex beta = 0.0;
    Complex gamma = 0.0;
    Complex delta = 0.0;
};

// Parameters of the polynomial Hamiltonians, keyed by symbol name:
// kappa0 kappa1 theta kappa theta1 eta1 theta_inf eta_inf theta0 eta0, and
// alpha for PII.
class AuxParams {
public:
    AuxParams() = default;
    AuxParams(std::initializer_list<std::pair<const std::string, Complex>> init) : values_(init) {}

    void set(const std::string& key, Complex v) { values_[key] = v; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    Complex get(const std::string& key) const;
    const std::map<std::string, Complex>& values() const { return values_; }

private:
    std::map<std::string, Complex> values_;
};

const std::vector<std::string>& required_aux(Equation eq);
// symbols of `eq` that `aux` does not define
std::vector<std::string> missing_aux(Equation eq, const AuxParams& aux);

PainleveParams param_to_painleve(const AuxParams& aux, Equation eq);

struct SystemDescriptor {
    Equation equation = Equation::I;
    Side side = Side::Painleve;
    int rank = 1;
    Complex g4sq = 0.0;
    AuxParams aux;          // Painleve side, and the point maps
    PainleveParams params;  // Calogero side
    TimeGauge gauge() const;
};

// Builds params from aux. For PII, aux "alpha" is used as is.
SystemDescriptor make_system(Equation eq, Side side, int rank, const AuxParams& aux, Complex g4sq = 0.0);
// Calogero side from alpha..delta directly (no aux, so no point maps).
SystemDescriptor make_calogero_system(const PainleveParams& params, int rank, Complex g4sq = 0.0);

struct PhaseState {
    CVec coords;
    CVec momenta;
    Complex time = 0.0;
};

struct Gradients {
    CVec d_coords;
    CVec d_momenta;
};

// ctx only matters for PVI on the Calogero side, where time is tau; its
// truncation orders are used and tau is taken from state.time.
Complex hamiltonian(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx = nullptr);
Gradients hamiltonian_gradients(const SystemDescriptor& sys, const PhaseState& s,
                                const EllipticContext* ctx = nullptr);

// d(coords)/dT and d(momenta)/dT in the raw time variable, with the gauge
// factor divided out.
struct PhaseVelocity {
    CVec coords;
    CVec momenta;
};
PhaseVelocity canonical_field(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx = nullptr);

// dH/dT along the flow minus the explicit dH/dT, both by finite differences
Complex autonomous_check(const SystemDescriptor& sys, const PhaseState& s, const EllipticContext* ctx = nullptr,
                         double h = 1e-5);

// One-body potentials on the Calogero side (rank-1 Hamiltonian is p^2/2 + V).
struct Potential {
    Complex v;
    Complex dv;
};
Potential calogero_potential(const PainleveParams& params, Complex q, Complex time, const EllipticContext* ctx);

} // namespace pcc
