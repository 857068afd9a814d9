#pragma once

#include <optional>
#include <span>
#include <utility>

#include "pcc/elliptic.hpp"
#include "pcc/systems.hpp"

namespace pcc {

// PVI time: t = (e3 - e1)/(e2 - e1) as a function of tau
Complex time_map_pvi(Complex tau, const EllipticContext* ctx = nullptr);
// Newton from tau_seed; throws NoConvergence after 50 steps
Complex time_map_pvi_inverse(Complex t, Complex tau_seed, const EllipticContext* ctx = nullptr);
// dtau/dt = pi i / (t (t - 1) (e2 - e1))
Complex jacobian_dtau_dt(Complex tau, const EllipticContext* ctx = nullptr);

// Painleve time for a Calogero time (tau -> t for VI, identity otherwise)
Complex painleve_time(Equation eq, Complex calogero_time, const EllipticContext* ctx = nullptr);
// dt/dT along the same map
Complex painleve_time_derivative(Equation eq, Complex calogero_time, const EllipticContext* ctx = nullptr);

// `time` is the Calogero time (tau for VI, t otherwise).
Complex lambda_of_q(Equation eq, Complex q, Complex time, const EllipticContext* ctx = nullptr);
Complex q_of_lambda(Equation eq, Complex lambda, Complex time, const EllipticContext* ctx = nullptr,
                    std::optional<Complex> branch_hint = std::nullopt);
Complex mu_of_pq(Equation eq, Complex q, Complex p, Complex time, const AuxParams& aux,
                 const EllipticContext* ctx = nullptr);
std::pair<Complex, Complex> pq_of_lambdamu(Equation eq, Complex lambda, Complex mu, Complex time, const AuxParams& aux,
                                           const EllipticContext* ctx = nullptr,
                                           std::optional<Complex> branch_hint = std::nullopt);

// mu = slope * p + offset at fixed (q, time)
struct MuAffine {
    Complex lambda;
    Complex slope;
    Complex offset;
};
MuAffine mu_affine(Equation eq, Complex q, Complex time, const AuxParams& aux, const EllipticContext* ctx = nullptr);

// c in  mu dlambda - H dt = c (p dq - Hcal dT) + exact
double one_form_constant(Equation eq);

enum class Direction { CalogeroToPainleve, PainleveToCalogero };

// Componentwise rank-1 maps. For PainleveToCalogero with PVI the time is
// inverted from ctx->tau() as seed, so ctx is required there. `hints`, if
// given, selects the q branch per component.
PhaseState multi_transform(Equation eq, Direction dir, const PhaseState& state, const AuxParams& aux,
                           const EllipticContext* ctx = nullptr, std::span<const Complex> hints = {});

} // namespace pcc
