#include "qlops/distillation.hpp"
#include "qlops/error_rates.hpp"
#include "qlops/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace qlops::distill {

namespace {

void check_protocol(const DistillationProtocol& protocol)
{
    if (protocol.d_x < 1 || protocol.d_z < 1 || protocol.d_m < 1)
        throw DomainError("distillation protocol distances must be at least 1");
}

} // namespace

long long unit_qubits(const DistillationProtocol& protocol)
{
    check_protocol(protocol);
    const long long dx = protocol.d_x;
    const long long dz = protocol.d_z;
    const long long dm = protocol.d_m;
    return 2 * (dx + 4 * dz) * 3 * dx + 4 * dm;
}

double expected_cycles(const DistillationProtocol& protocol, double p_accept)
{
    check_protocol(protocol);
    if (!(p_accept > 0.0) || p_accept > 1.0)
        throw DomainError("expected_cycles: acceptance probability must lie in (0, 1]");
    return 6.0 * protocol.d_m / p_accept;
}

// Fault-path model of the 15-to-1 unit.
//
// The unit runs 15 pi/8 rotations over 6 d_m rounds on five logical
// qubits: four check qubits measured out in X at the end, plus the output
// patch (distance d_X in both bases).  Per-round logical error rates come
// from the platform fit, p(d) = exp(a + b d).  Counted paths:
//
//   * Rotation faults.  Each rotation is a d_m-round joint-Pauli
//     measurement whose outcome flips with probability q = d_m * p(d_m).
//     Any one or two flipped rotations are caught by the final checks of
//     the 15-qubit Reed-Muller structure; of the weight-3 combinations,
//     the 35 that form logical operators pass undetected.
//   * Output-patch faults.  Storage faults on the output during the
//     protocol propagate into later rotations and trip the checks, so
//     only the final round before the state leaves the unit goes
//     unchecked: it contributes p(d_X) directly to the output infidelity.
//   * Check-qubit faults.  Storage faults on the four thin patches (space
//     channel at d_Z, time channel at d_m) flip either a rotation outcome
//     or the final X measurement; both cause a reject.
//
// p_out is the undetected-fault probability of one run; post-selection
// changes the unit's throughput (via p_accept), not the reported
// infidelity.  Pairs of sub-threshold faults that could in principle
// cancel each other's detection are not counted.
DistillationError distillation_error(const DistillationProtocol& protocol, const FitModel& fit)
{
    check_protocol(protocol);
    for (int d : {protocol.d_x, protocol.d_z, protocol.d_m}) {
        if (!rates::in_fitted_range(fit, d))
            throw DomainError("distillation_error: distance " + std::to_string(d) +
                              " outside the fit's calibrated range [" +
                              std::to_string(fit.d_min) + ", " + std::to_string(fit.d_max) + "]");
    }
    const double p_dx = rates::predict_p0(fit, protocol.d_x);
    const double p_dz = rates::predict_p0(fit, protocol.d_z);
    const double p_dm = rates::predict_p0(fit, protocol.d_m);
    const double q = protocol.d_m * p_dm;

    DistillationError result;
    result.p_out = std::min(1.0, 35.0 * q * q * q + p_dx);
    const double detected = 15.0 * q + 105.0 * q * q + 24.0 * protocol.d_m * (p_dz + p_dm);
    result.p_accept = std::clamp(1.0 - detected, 0.0, 1.0);
    return result;
}

long long units_needed(long k, double t_unit, double t_logical)
{
    if (k < 1 || !(t_unit > 0.0) || !(t_logical > 0.0))
        throw DomainError("units_needed: all arguments must be positive");
    const double units = std::ceil(static_cast<double>(k) * t_unit / t_logical);
    return static_cast<long long>(units);
}

FactoryPlan plan_factory(long k, const FitModel& fit, double t_logical,
                         const std::function<double(int)>& t_sec_for_distance, double target_p0,
                         int d_min, int d_max)
{
    if (!(target_p0 > 0.0))
        throw DomainError("plan_factory: target infidelity must be positive");
    if (d_min < 1 || d_max < d_min)
        throw DomainError("plan_factory: empty search range");

    const int first = (d_min % 2 == 0) ? d_min + 1 : d_min;
    FactoryPlan best;
    bool found = false;
    for (int dx = first; dx <= d_max; dx += 2) {
        for (int dz = first; dz <= d_max; dz += 2) {
            for (int dm = first; dm <= d_max; dm += 2) {
                const DistillationProtocol protocol{dx, dz, dm};
                const DistillationError error = distillation_error(protocol, fit);
                if (error.p_out > target_p0 || !(error.p_accept > 0.0))
                    continue;
                FactoryPlan plan;
                plan.protocol = protocol;
                plan.p_out = error.p_out;
                plan.p_accept = error.p_accept;
                plan.expected_cycles = expected_cycles(protocol, error.p_accept);
                plan.t_unit =
                    plan.expected_cycles * t_sec_for_distance(std::max({dx, dz, dm}));
                plan.unit_qubits = unit_qubits(protocol);
                plan.units = units_needed(k, plan.t_unit, t_logical);
                plan.total_qubits = plan.units * plan.unit_qubits;
                const auto rank = [](const FactoryPlan& p) {
                    return std::make_tuple(p.total_qubits, p.expected_cycles, p.protocol.d_x,
                                           p.protocol.d_z, p.protocol.d_m);
                };
                if (!found || rank(plan) < rank(best)) {
                    best = plan;
                    found = true;
                }
            }
        }
    }
    if (!found)
        throw InfeasibleError("plan_factory: no protocol in range [" + std::to_string(d_min) +
                              ", " + std::to_string(d_max) + "] reaches target infidelity");
    return best;
}

} // namespace qlops::distill
