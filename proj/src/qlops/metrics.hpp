#pragma once

#include "qlops/model.hpp"

#include <span>

namespace qlops::metrics {

using model::CodeSpec;

// Syndrome extraction cycles consumed by one logical operation:
// ceil(t_r / t_sec) + d rounds at t_sec each.
//
// When t_r / t_sec sits on an integer boundary at input precision the
// ceiling is ambiguous (table-rounded reaction times straddle it), so the
// cycle count is reported for both readings and flagged.
struct LogicalCycle {
    long cycles = 0;
    double duration = 0.0; // seconds
    bool boundary = false;
    long cycles_alt = 0;      // cycles + 1 when flagged, else == cycles
    double duration_alt = 0.0;
};

LogicalCycle logical_cycle(double t_r, double t_sec, int d);

// QLOPS of a device with k logical qubits: k / ((ceil(t_r/t_sec) + d) t_sec).
double qlops(long k, double t_r, double t_sec, int d);

// Variant for correlated decoding, where the d-round requirement drops:
// k / (rounds_per_op * t_sec).
double qlops_correlated(long k, double t_sec, long rounds_per_op = 1);

// QLOPS divided by the system size in physical qubits.
double qlops_density(double q, long long n_phys);

// Physical qubits of `patches` blocks of the given code: 2d^2-1 per
// surface patch, 2n per GB grid block.
long long physical_qubits(const CodeSpec& code, long long patches);

long long surface_patch_qubits(int d);

// Mixed accounting with per-group patch sizes (e.g. cold-storage patches
// at a fixed size next to distance-d active patches).
struct PatchGroup {
    long long patches = 0;
    long long qubits_per_patch = 0;
};
long long physical_qubits_mixed(std::span<const PatchGroup> groups);

// True when the reaction time exceeds d rounds of syndrome extraction,
// i.e. decoding falls behind and a parallel window decoder is required.
bool needs_parallel_decoder(double t_r, int d, double t_sec);

} // namespace qlops::metrics
