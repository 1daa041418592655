#pragma once

#include "qlops/model.hpp"

#include <vector>

namespace qlops::sec {

using model::GridLayout;
using model::HardwareParams;

enum class StepKind { Prep, Move, Gate1Q, Gate2QRegion, Readout };

struct Step {
    StepKind kind = StepKind::Move;
    double duration = 0.0; // seconds
    bool pipelined = false;
    double distance_um = 0.0; // Move steps only
    int group = -1;           // index of the ancilla group, -1 for shared steps
};

struct SecSchedule {
    std::vector<Step> steps;
    double total = 0.0; // sum of non-pipelined durations, seconds

    // Recomputed total as if nothing were pipelined.
    double total_unpipelined() const;
};

// AOD shuttle time over dx micrometers at acceleration a_p (um/us^2):
// sqrt(6 dx / a_p), returned in seconds.
double move_time(double dx_um, double accel_um_per_us2);

// Superconducting surface-code cycle: state preparation, measurement,
// 4 single-qubit gate layers and 4 CZ layers, all sequential.
double surface_sec_length(const HardwareParams& hw);

// Surface code on neutral atoms with AOD moves of one lattice site:
// 4 moves + 4 CZ regions + 4 single-qubit layers; preparation and
// readout are pipelined away.  The step count does not depend on the
// distance; `d` is accepted to document which patch is being cycled.
SecSchedule atom_surface_schedule(const HardwareParams& hw, int d);
double atom_surface_sec_length(const HardwareParams& hw, int d);

// Full syndrome extraction cycle of a GB grid layout.  Ancilla groups
// (maximal sets sharing one offset list) are shuttled one at a time:
// each group enters its home placement from parking, visits every check
// offset in order with a CZ region at each stop, and parks again for
// measurement.  Parking placements are chosen by exhaustive enumeration
// over the candidate regions, minimizing the group's total move time;
// ties resolve to the lowest (region, entry, exit) placement so results
// are order-independent.  Preparation and readout are pipelined with the
// other group's dance and do not contribute to the total.
SecSchedule schedule_gb_sec(const GridLayout& layout, const HardwareParams& hw);

// Groups as the scheduler sees them, exposed for enumeration checks.
struct AncillaGroup {
    std::vector<model::GridCoord> homes;
    std::vector<model::GridCoord> offsets;
};
std::vector<AncillaGroup> ancilla_groups(const GridLayout& layout);

// Candidate parking displacements of a group inside one region.
std::vector<model::GridCoord> parking_displacements(const AncillaGroup& group,
                                                    const model::GridRect& region);

std::string schedule_to_csv(const SecSchedule& schedule);

} // namespace qlops::sec
