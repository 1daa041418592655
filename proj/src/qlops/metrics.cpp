#include "qlops/metrics.hpp"
#include "qlops/errors.hpp"

#include <cmath>

namespace qlops::metrics {

namespace {

constexpr double kBoundaryTolerance = 1e-9; // relative

} // namespace

LogicalCycle logical_cycle(double t_r, double t_sec, int d)
{
    if (!(t_sec > 0.0))
        throw DomainError("logical_cycle: t_sec must be positive");
    if (!(t_r >= 0.0))
        throw DomainError("logical_cycle: t_r must be non-negative");
    if (d < 1)
        throw DomainError("logical_cycle: d must be at least 1");

    const double ratio = t_r / t_sec;
    const double nearest = std::round(ratio);
    LogicalCycle cycle;
    if (ratio > 0.0 && std::abs(ratio - nearest) <= kBoundaryTolerance * std::max(1.0, ratio)) {
        // Exact multiple at input precision: both ceilings are defensible.
        cycle.boundary = true;
        cycle.cycles = static_cast<long>(nearest) + d;
        cycle.cycles_alt = cycle.cycles + 1;
    } else {
        cycle.cycles = static_cast<long>(std::ceil(ratio)) + d;
        cycle.cycles_alt = cycle.cycles;
    }
    cycle.duration = static_cast<double>(cycle.cycles) * t_sec;
    cycle.duration_alt = static_cast<double>(cycle.cycles_alt) * t_sec;
    return cycle;
}

double qlops(long k, double t_r, double t_sec, int d)
{
    if (k < 1)
        throw DomainError("qlops: k must be at least 1");
    return static_cast<double>(k) / logical_cycle(t_r, t_sec, d).duration;
}

double qlops_correlated(long k, double t_sec, long rounds_per_op)
{
    if (k < 1)
        throw DomainError("qlops_correlated: k must be at least 1");
    if (!(t_sec > 0.0))
        throw DomainError("qlops_correlated: t_sec must be positive");
    if (rounds_per_op < 1)
        throw DomainError("qlops_correlated: rounds_per_op must be at least 1");
    return static_cast<double>(k) / (static_cast<double>(rounds_per_op) * t_sec);
}

double qlops_density(double q, long long n_phys)
{
    if (n_phys < 1)
        throw DomainError("qlops_density: physical qubit count must be at least 1");
    return q / static_cast<double>(n_phys);
}

long long surface_patch_qubits(int d)
{
    if (d < 1)
        throw DomainError("surface_patch_qubits: d must be at least 1");
    const long long dd = d;
    return 2 * dd * dd - 1;
}

long long physical_qubits(const CodeSpec& code, long long patches)
{
    if (patches < 1)
        throw DomainError("physical_qubits: patches must be at least 1");
    if (code.family == model::CodeFamily::SurfacePatch)
        return patches * surface_patch_qubits(code.d);
    return patches * 2 * static_cast<long long>(code.n);
}

long long physical_qubits_mixed(std::span<const PatchGroup> groups)
{
    long long total = 0;
    for (const PatchGroup& group : groups) {
        if (group.patches < 1 || group.qubits_per_patch < 1)
            throw DomainError("physical_qubits_mixed: counts must be positive");
        total += group.patches * group.qubits_per_patch;
    }
    return total;
}

bool needs_parallel_decoder(double t_r, int d, double t_sec)
{
    if (!(t_sec > 0.0))
        throw DomainError("needs_parallel_decoder: t_sec must be positive");
    return t_r > static_cast<double>(d) * t_sec;
}

} // namespace qlops::metrics
