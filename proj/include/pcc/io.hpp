#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcc/dynamics.hpp"

namespace pcc {

// "1", "-0.5i", "1+2i", "2.5e-1-3i", "[1,2]"
std::optional<Complex> parse_complex(const std::string& text);

// Flat JSON object of symbol -> number or [re, im]. Throws InvalidArgument.
AuxParams parse_params_json(const std::string& text);
// "kappa0=1,kappa1=1+0.5i" (commas or whitespace between entries)
AuxParams parse_params_inline(const std::string& text);

// {"time": c, "coords": [c, ...], "momenta": [c, ...]}
PhaseState parse_state_json(const std::string& text);

// {"alpha":[re,im],"beta":...,"gamma":...,"delta":...}
std::string painleve_params_json(const PainleveParams& p);

// re_t, im_t, then re_/im_ of l1.. m1.. (Painleve side) or q1.. p1.. (Calogero side)
std::vector<std::string> trajectory_columns(Side side, int rank);

std::string trajectory_to_csv(const Trajectory& traj);
std::string trajectory_to_json(const Trajectory& traj);

struct TrajectoryTable {
    std::vector<std::string> columns;
    std::vector<PhaseState> samples;
};
TrajectoryTable read_trajectory_csv(const std::string& text);
// samples plus the metadata needed to rebuild the system
Trajectory read_trajectory_json(const std::string& text);

} // namespace pcc
