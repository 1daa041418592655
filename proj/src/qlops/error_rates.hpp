#pragma once

#include "qlops/model.hpp"

#include <utility>
#include <vector>

namespace qlops::rates {

using model::FitModel;
using model::MatchParity;

// Per-layer per-logical-qubit error rate of a memory experiment:
// p0 = 1 - (1 - p_L)^(1/(k d)).
double p0_from_pl(double p_l, long k, int d);

// Inverse of the above, mainly for round-trip checks:
// p_L = 1 - (1 - p0)^(k d).
double pl_from_p0(double p0, long k, int d);

struct FitSample {
    int d = 0;
    double p0 = 0.0;
};

struct FitResult {
    FitModel model;
    std::vector<double> residuals; // ln p0 - (a + b d), per sample
    double max_abs_residual = 0.0;
};

// Unweighted least squares of ln(p0) against d.  Needs at least two
// distinct distances.
FitResult fit_log_linear(const std::vector<FitSample>& samples);

double predict_p0(const FitModel& model, int d);
bool in_fitted_range(const FitModel& model, int d);

// Smallest distance in [d_min, d_max] with the requested parity whose
// predicted p0 does not exceed the target.  Throws InfeasibleError when
// no distance in range reaches the target.
int match_distance(const FitModel& model, double target_p0, int d_min, int d_max,
                   MatchParity parity);

// Calibration samples as read from CSV columns (d, p_L, k).
struct CalibrationSample {
    int d = 0;
    double p_l = 0.0;
    long k = 1;
};

std::vector<CalibrationSample> read_calibration_csv(const std::string& path);
FitResult fit_from_calibration(const std::vector<CalibrationSample>& samples);

} // namespace qlops::rates
