#pragma once

#include "qlops/model.hpp"

#include <functional>

namespace qlops::distill {

using model::FitModel;

// One-level 15-to-1 protocol distances: d_X / d_Z of the distillation
// block and the measurement distance d_m of the joint-Pauli rotations.
struct DistillationProtocol {
    int d_x = 0;
    int d_z = 0;
    int d_m = 0;
    friend bool operator==(const DistillationProtocol&, const DistillationProtocol&) = default;
};

// Physical footprint of one distillation unit:
// 2 (d_X + 4 d_Z) * 3 d_X + 4 d_m.
long long unit_qubits(const DistillationProtocol& protocol);

// Mean cycles per accepted output, including post-selection restarts:
// 6 d_m / p_accept.
double expected_cycles(const DistillationProtocol& protocol, double p_accept);

struct DistillationError {
    double p_out = 0.0;    // infidelity of the output magic state
    double p_accept = 1.0; // probability a run passes post-selection
};

// Fault-counting estimate of the 15-to-1 protocol with the per-round
// per-logical-qubit error rate taken from the platform fit.  See the
// model notes in distillation.cpp.  Throws when a distance lies outside
// the fit's calibrated range.
DistillationError distillation_error(const DistillationProtocol& protocol, const FitModel& fit);

// Distillation units needed so one magic state is available per logical
// qubit per logical cycle: ceil(k * t_unit / t_logical).
long long units_needed(long k, double t_unit, double t_logical);

struct FactoryPlan {
    DistillationProtocol protocol;
    double p_out = 0.0;
    double p_accept = 1.0;
    double expected_cycles = 0.0;
    double t_unit = 0.0; // seconds
    long long unit_qubits = 0;
    long long units = 0;
    long long total_qubits = 0;
};

// Searches odd (d_X, d_Z, d_m) in [d_min, d_max], keeps protocols whose
// output infidelity meets target_p0 and returns the one minimizing
// total_qubits; ties break on expected_cycles, then lexicographic
// (d_X, d_Z, d_m).  `t_sec_for_distance` supplies the cycle length of the
// distillation blocks; it is queried with the largest protocol distance.
FactoryPlan plan_factory(long k, const FitModel& fit, double t_logical,
                         const std::function<double(int)>& t_sec_for_distance, double target_p0,
                         int d_min, int d_max);

} // namespace qlops::distill
