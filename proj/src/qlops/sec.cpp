#include "qlops/sec.hpp"
#include "qlops/errors.hpp"
#include "qlops/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qlops::sec {

namespace {

using model::GridCoord;
using model::GridRect;
using model::PlatformKind;

double euclid(GridCoord a, GridCoord b)
{
    const double dr = a.row - b.row;
    const double dc = a.col - b.col;
    return std::sqrt(dr * dr + dc * dc);
}

struct AtomTimings {
    double accel = 0.0;   // um / us^2
    double spacing = 0.0; // um
};

AtomTimings atom_timings(const HardwareParams& hw)
{
    if (hw.kind != PlatformKind::NeutralAtom)
        throw DomainError("schedule: platform '" + hw.name + "' is not a neutral-atom platform");
    if (!hw.movement_accel || !hw.lattice_spacing)
        throw DomainError("schedule: platform '" + hw.name +
                          "' is missing movement_accel or lattice_spacing");
    return {*hw.movement_accel, *hw.lattice_spacing};
}

const char* step_name(StepKind kind)
{
    switch (kind) {
    case StepKind::Prep: return "prep";
    case StepKind::Move: return "move";
    case StepKind::Gate1Q: return "gate_1q";
    case StepKind::Gate2QRegion: return "gate_2q_region";
    case StepKind::Readout: return "readout";
    }
    return "?";
}

} // namespace

double SecSchedule::total_unpipelined() const
{
    double sum = 0.0;
    for (const Step& step : steps)
        sum += step.duration;
    return sum;
}

double move_time(double dx_um, double accel_um_per_us2)
{
    if (!(accel_um_per_us2 > 0.0))
        throw DomainError("move_time: acceleration must be positive");
    if (!(dx_um >= 0.0))
        throw DomainError("move_time: distance must be non-negative");
    return std::sqrt(6.0 * dx_um / accel_um_per_us2) * 1e-6;
}

double surface_sec_length(const HardwareParams& hw)
{
    if (hw.kind != PlatformKind::Superconducting)
        throw DomainError("surface_sec_length: platform '" + hw.name +
                          "' is not superconducting");
    return hw.prep_time + hw.readout_time + 4.0 * hw.gate_time_1q + 4.0 * hw.gate_time_2q;
}

SecSchedule atom_surface_schedule(const HardwareParams& hw, int d)
{
    if (d < 1)
        throw DomainError("atom_surface_schedule: d must be at least 1");
    const AtomTimings timing = atom_timings(hw);
    const double hop = move_time(timing.spacing, timing.accel);

    SecSchedule schedule;
    schedule.steps.push_back({StepKind::Prep, hw.prep_time, true, 0.0, -1});
    for (int layer = 0; layer < 4; ++layer) {
        schedule.steps.push_back({StepKind::Move, hop, false, timing.spacing, 0});
        schedule.steps.push_back({StepKind::Gate2QRegion, hw.gate_time_2q, false, 0.0, 0});
    }
    for (int layer = 0; layer < 4; ++layer)
        schedule.steps.push_back({StepKind::Gate1Q, hw.gate_time_1q, false, 0.0, 0});
    schedule.steps.push_back({StepKind::Readout, hw.readout_time, true, 0.0, -1});
    for (const Step& step : schedule.steps)
        if (!step.pipelined)
            schedule.total += step.duration;
    return schedule;
}

double atom_surface_sec_length(const HardwareParams& hw, int d)
{
    return atom_surface_schedule(hw, d).total;
}

std::vector<AncillaGroup> ancilla_groups(const GridLayout& layout)
{
    std::vector<AncillaGroup> groups;
    const auto collect = [&groups](const std::vector<model::CheckDef>& checks) {
        for (const model::CheckDef& check : checks) {
            AncillaGroup* group = nullptr;
            for (AncillaGroup& g : groups) {
                if (g.offsets == check.offsets) {
                    group = &g;
                    break;
                }
            }
            if (group == nullptr) {
                groups.push_back({});
                group = &groups.back();
                group->offsets = check.offsets;
            }
            group->homes.push_back(check.home);
        }
    };
    collect(layout.x_checks);
    collect(layout.z_checks);
    return groups;
}

std::vector<GridCoord> parking_displacements(const AncillaGroup& group, const GridRect& region)
{
    // The AOD shifts the whole group rigidly, so a placement is a single
    // displacement vector that lands every home inside the region.
    int min_row = std::numeric_limits<int>::max();
    int max_row = std::numeric_limits<int>::min();
    int min_col = std::numeric_limits<int>::max();
    int max_col = std::numeric_limits<int>::min();
    for (const GridCoord& home : group.homes) {
        min_row = std::min(min_row, home.row);
        max_row = std::max(max_row, home.row);
        min_col = std::min(min_col, home.col);
        max_col = std::max(max_col, home.col);
    }
    std::vector<GridCoord> displacements;
    for (int dr = region.row0 - min_row; dr <= region.row1 - max_row; ++dr)
        for (int dc = region.col0 - min_col; dc <= region.col1 - max_col; ++dc)
            displacements.push_back({dr, dc});
    return displacements;
}

SecSchedule schedule_gb_sec(const GridLayout& layout, const HardwareParams& hw)
{
    const AtomTimings timing = atom_timings(hw);
    const auto groups = ancilla_groups(layout);

    SecSchedule schedule;
    schedule.steps.push_back({StepKind::Prep, hw.prep_time, true, 0.0, -1});

    for (size_t group_index = 0; group_index < groups.size(); ++group_index) {
        const AncillaGroup& group = groups[group_index];
        const GridCoord origin{0, 0};
        const GridCoord& last = group.offsets.back();

        struct Placement {
            size_t region = 0;
            GridCoord entry;
            GridCoord exit;
            double cost = std::numeric_limits<double>::infinity();
        };
        Placement best;
        bool found = false;
        for (size_t region_index = 0; region_index < layout.parking_regions.size(); ++region_index) {
            const auto displacements =
                parking_displacements(group, layout.parking_regions[region_index]);
            for (const GridCoord& entry : displacements) {
                const double in_cost =
                    move_time(euclid(entry, origin) * timing.spacing, timing.accel);
                for (const GridCoord& exit : displacements) {
                    const double cost =
                        in_cost + move_time(euclid(last, exit) * timing.spacing, timing.accel);
                    // Hop legs between offsets are placement-independent, so
                    // comparing entry+exit cost picks the same argmin.
                    const bool better =
                        !found || cost < best.cost ||
                        (cost == best.cost &&
                         std::tie(region_index, entry.row, entry.col, exit.row, exit.col) <
                             std::tie(best.region, best.entry.row, best.entry.col, best.exit.row,
                                      best.exit.col));
                    if (better) {
                        best = {region_index, entry, exit, cost};
                        found = true;
                    }
                }
            }
        }
        if (!found)
            throw InfeasibleError("schedule_gb_sec: no parking region can host ancilla group " +
                                  std::to_string(group_index));

        const int gid = static_cast<int>(group_index);
        const auto push_move = [&](GridCoord from, GridCoord to) {
            const double dist = euclid(from, to) * timing.spacing;
            schedule.steps.push_back(
                {StepKind::Move, move_time(dist, timing.accel), false, dist, gid});
        };
        push_move(best.entry, origin);
        GridCoord position = origin;
        for (const GridCoord& offset : group.offsets) {
            push_move(position, offset);
            schedule.steps.push_back({StepKind::Gate2QRegion, hw.gate_time_2q, false, 0.0, gid});
            position = offset;
        }
        push_move(position, best.exit);
    }

    schedule.steps.push_back({StepKind::Readout, hw.readout_time, true, 0.0, -1});
    for (const Step& step : schedule.steps)
        if (!step.pipelined)
            schedule.total += step.duration;
    return schedule;
}

std::string schedule_to_csv(const SecSchedule& schedule)
{
    std::ostringstream out;
    out << "step,distance_um,duration_s,pipelined\n";
    for (const Step& step : schedule.steps) {
        out << step_name(step.kind) << ',' << units::format_sig(step.distance_um) << ','
            << units::format_sig(step.duration) << ',' << (step.pipelined ? 1 : 0) << '\n';
    }
    return out.str();
}

} // namespace qlops::sec
