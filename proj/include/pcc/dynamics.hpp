#pragma once

#include <vector>

#include "pcc/elliptic.hpp"
#include "pcc/systems.hpp"

namespace pcc {

enum class Termination { Completed, PoleDetected, StepUnderflow, MaxSteps };
const char* to_string(Termination t);

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 200000;
    // largest step as a fraction of the path; 0 leaves it to the controller
    double max_step_fraction = 0.0;
    double blowup = 1e8;
    int lattice_order = 24;
    int theta_order = 16;
};

// Samples along the straight segment time(s) = t_start + s (t_end - t_start).
struct Trajectory {
    SystemDescriptor system;
    std::vector<PhaseState> samples;
    std::vector<PhaseVelocity> rates;  // d/dtime at each sample
    std::vector<double> path;          // s of each sample
    Complex t_start = 0.0;
    Complex t_end = 0.0;
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    Termination termination = Termination::Completed;
    Complex termination_time = 0.0;
};

// Dormand-Prince 5(4) with PI step control on the complex segment
// initial.time -> t_end. Blow-up past options.blowup stops with PoleDetected;
// the samples up to that point are kept.
Trajectory integrate(const SystemDescriptor& sys, const PhaseState& initial, Complex t_end,
                     const IntegrateOptions& options = {});

// cubic Hermite interpolation between accepted steps, s in [0, path.back()]
PhaseState dense_state(const Trajectory& traj, double s);

// RHS of the second-order Painleve equation for lambda'' (rank 1)
Complex painleve_rhs(const PainleveParams& p, Complex lambda, Complex dlambda, Complex t);

// max |lambda'' - RHS| at interior points of a uniform resampling of a
// rank-1 Painleve-side trajectory; TooSparse below 20 samples
double painleve_residual(Equation eq, const Trajectory& traj);

} // namespace pcc
